//! Canned figure configurations and the numeric predicates that judge them.

use crate::run::TaskResult;
use hoti_core::invariants::{bulk_corner_parity, SymmetryClass};
use serde::Serialize;
use serde_json::Value;

pub const FIGURES: [&str; 5] = ["model1", "model2", "model3", "hinge-modes", "chiral-quarter"];

pub fn canned(id: &str) -> Option<&'static str> {
    Some(match id {
        "model1" => include_str!("../../../configs/fig-model1.json"),
        "model2" => include_str!("../../../configs/fig-model2.json"),
        "model3" => include_str!("../../../configs/fig-model3.json"),
        "hinge-modes" => include_str!("../../../configs/fig-hinge-modes.json"),
        "chiral-quarter" => include_str!("../../../configs/fig-chiral-quarter.json"),
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

fn check(claim: &str, pass: bool, detail: String) -> Check {
    Check { claim: claim.into(), pass, detail }
}

fn summary<'a>(rs: &'a [TaskResult], name: &str) -> Option<&'a Value> {
    rs.iter().find(|r| r.name == name).map(|r| &r.summary)
}

fn f(v: Option<&Value>, key: &str) -> f64 {
    v.and_then(|v| v[key].as_f64()).unwrap_or(f64::NAN)
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().map(|a| a.iter().filter_map(Value::as_i64).collect()).unwrap_or_default()
}

fn gapped(rs: &[TaskResult], name: &str, threshold: f64) -> Check {
    let g = f(summary(rs, name), "min_abs");
    check(&format!("{name} gapped (min|E| > {threshold})"), g > threshold, format!("min|E| = {g:.4}"))
}

fn gapless(rs: &[TaskResult], name: &str, threshold: f64) -> Check {
    let g = f(summary(rs, name), "min_abs");
    check(&format!("{name} gapless (min|E| < {threshold})"), g < threshold, format!("min|E| = {g:.4}"))
}

fn flow_checks(rs: &[TaskResult], weight: f64) -> Vec<Check> {
    let Some(h) = summary(rs, "hinges").map(|s| &s["hinges"]) else {
        return vec![check("hinge flow computed", false, "missing".into())];
    };
    let c = ints(&h["c"]);
    let par = ints(&h["parities"]);
    let w = h["min_hinge_weight"].as_f64().unwrap_or(f64::NAN);
    let k = h["kirchhoff_sum"].as_i64().unwrap_or(i64::MAX);
    vec![
        check(&format!("in-gap hinge states with weight > {weight}"), !c.is_empty() && w > weight, format!("min weight {w:.3}")),
        check("adjacent-hinge parity 1", par.len() == 4 && par.iter().all(|&p| p == 1), format!("c = {c:?}")),
        check("Kirchhoff sum 0", k == 0, format!("sum = {k}")),
    ]
}

/// Mean weight of the near-zero states over the given regions.
fn mean_weight(s: &Value, names: &[&str]) -> f64 {
    let regions: Vec<String> =
        s["regions"].as_array().map(|a| a.iter().filter_map(|v| v.as_str().map(String::from)).collect()).unwrap_or_default();
    let idx: Vec<usize> = names.iter().filter_map(|n| regions.iter().position(|r| r == n)).collect();
    let rows = s["weights"].as_array().cloned().unwrap_or_default();
    if rows.is_empty() || idx.len() != names.len() {
        return f64::NAN;
    }
    let total: f64 = rows.iter().map(|r| idx.iter().map(|&i| r[i].as_f64().unwrap_or(0.0)).sum::<f64>()).sum();
    total / rows.len() as f64
}

pub fn judge(id: &str, rs: &[TaskResult]) -> Vec<Check> {
    let mut out = Vec::new();
    match id {
        "model1" => {
            for n in ["slab-yz-gamma0", "slab-xy-gamma0", "wire-gamma0"] {
                out.push(gapless(rs, n, 0.05));
            }
            for n in ["slab-yz", "slab-xy"] {
                out.push(gapped(rs, n, 0.1));
            }
            out.extend(flow_checks(rs, 0.6));
            let cs = summary(rs, "hinges").and_then(|s| s["trim"]["cs_parity"].as_u64());
            out.push(check("Chern-Simons parity 1", cs == Some(1), format!("{cs:?}")));
        }
        "model2" | "model3" => {
            // side faces of the wire; the top face is invariant under the symmetry and may stay gapless
            for n in ["slab-yz", "slab-xz"] {
                out.push(gapped(rs, n, 0.1));
            }
            out.extend(flow_checks(rs, if id == "model2" { 0.5 } else { 0.6 }));
            if id == "model3" {
                let c = summary(rs, "hinges").map(|s| ints(&s["hinges"]["c"])).unwrap_or_default();
                let alt = c.len() == 4 && c.iter().all(|x| x.abs() == 1) && (0..4).all(|l| c[(l + 1) % 4] == -c[l]);
                out.push(check("four hinge channels with alternating signs", alt, format!("c = {c:?}")));
                let p = bulk_corner_parity(&c, SymmetryClass::C4T).ok();
                out.push(check("single-hinge parity 1", p == Some(1), format!("{p:?}")));
            }
            let sym = summary(rs, "symmetry").and_then(|s| s["pass"].as_bool());
            out.push(check("model is covariant", sym == Some(true), format!("{sym:?}")));
        }
        "hinge-modes" => {
            if let Some(s) = summary(rs, "cube-ham1") {
                let a = mean_weight(s, &["h1", "h3"]);
                let b = mean_weight(s, &["h2", "h4"]);
                out.push(check("ham1 modes on two opposite hinges (weight > 0.6)", a.max(b) > 0.6, format!("h1+h3 {a:.3}, h2+h4 {b:.3}")));
            }
            if let Some(s) = summary(rs, "cube-ham3") {
                let each: Vec<f64> = ["h1", "h2", "h3", "h4"].iter().map(|h| mean_weight(s, &[h])).collect();
                let total: f64 = each.iter().sum();
                let spread = each.iter().all(|w| *w > 0.1 * total.max(1e-300));
                out.push(check(
                    "ham3 modes on all four vertical hinges (weight > 0.6, each > 10% of it)",
                    total > 0.6 && spread,
                    format!("per hinge {:?}", each.iter().map(|w| (w * 1000.0).round() / 1000.0).collect::<Vec<_>>()),
                ));
            }
        }
        "chiral-quarter" => {
            let c = summary(rs, "corner").map(|s| &s["corner"]);
            let idx = c.and_then(|c| c["index"].as_i64());
            let e = c.and_then(|c| c["max_kernel_energy"].as_f64()).unwrap_or(f64::NAN);
            let w = c.and_then(|c| c["min_corner_weight"].as_f64()).unwrap_or(f64::NAN);
            out.push(check("corner index ±1", idx.is_some_and(|i| i.abs() == 1), format!("{idx:?}")));
            out.push(check("kernel energy < 1e-8", e < 1e-8, format!("{e:.2e}")));
            out.push(check("kernel weight in the corner > 0.9", w > 0.9, format!("{w:.4}")));
            let fi = c.and_then(|c| c["face_layer"]["index"].as_i64());
            out.push(check("face layer index −2", fi == Some(-2), format!("{fi:?}")));
        }
        _ => {}
    }
    out
}
