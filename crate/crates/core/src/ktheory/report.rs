//! JSON summary of a spectral sequence computation.

use super::complex::FilteredComplex;
use super::couple::{higher_boundary_map, pages, CofiltrationData};
use super::group::{combo, FGAbelianGroup};
use super::presets::{invariant_factors, Preset};
use crate::error::Result;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub labels: Vec<String>,
}

impl From<&FGAbelianGroup> for GroupSummary {
    fn from(g: &FGAbelianGroup) -> Self {
        GroupSummary { name: g.name(), labels: g.labels.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelGroups {
    pub level: usize,
    pub name: String,
    pub k_e: [GroupSummary; 2],
    pub k_a: [GroupSummary; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct PageEntry {
    pub r: usize,
    pub p: usize,
    pub k: usize,
    pub name: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Differential {
    pub r: usize,
    pub p: usize,
    pub k: usize,
    pub source: GroupSummary,
    pub target: GroupSummary,
    pub matrix: Vec<Vec<i64>>,
    /// Smith invariant factors of the matrix (nonzero diagonal).
    pub image_factors: Vec<i64>,
    pub cokernel: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub class: String,
    pub in_domain: bool,
    pub value: Option<String>,
    pub zero: Option<bool>,
    /// The value generates the codomain.
    pub generator: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySummary {
    pub r: usize,
    pub k: usize,
    pub domain: GroupSummary,
    pub codomain: GroupSummary,
    pub matrix: Vec<Vec<i64>>,
    pub zero: bool,
    pub evaluations: Vec<Evaluation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checks {
    pub exact: bool,
    pub homology_route: bool,
    pub closed_form: bool,
    pub lift_independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KssReport {
    pub preset: String,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hinge_charges: Option<[i64; 4]>,
    pub levels: Vec<LevelGroups>,
    pub pages: Vec<PageEntry>,
    pub differentials: Vec<Differential>,
    pub boundary_maps: Vec<BoundarySummary>,
    pub checks: Checks,
}

impl KssReport {
    pub fn boundary(&self, r: usize, k: usize) -> Option<&BoundarySummary> {
        self.boundary_maps.iter().find(|b| b.r == r && b.k == k)
    }

    pub fn differential(&self, r: usize, p: usize, k: usize) -> Option<&Differential> {
        self.differentials.iter().find(|d| d.r == r && d.p == p && d.k == k)
    }
}

/// Named bulk class: label, degree, coordinates in `K_k(A_0)`.
pub type NamedClass = (String, usize, Vec<BigInt>);

/// Coordinates of bulk generators named `labels` in the homology basis of `A_0`.
pub fn named_classes(c: &FilteredComplex, cd: &CofiltrationData, labels: &[String]) -> Vec<NamedClass> {
    let mut out = Vec::new();
    for label in labels {
        let Some(g) = c.gens.iter().find(|g| &g.label == label && g.level == 0) else {
            continue;
        };
        let k = g.parity;
        let group = &cd.k_a[0][k];
        // level 0 carries no internal differential in the presets, so the
        // homology labels are the generator labels themselves
        if let Some(i) = group.labels.iter().position(|l| l == label) {
            let mut v = vec![BigInt::zero(); group.ngens()];
            v[i] = BigInt::from(1);
            out.push((label.clone(), k, v));
        }
    }
    out
}

pub fn report(preset: &Preset) -> Result<KssReport> {
    let cd = preset.complex.cofiltration()?;
    let named = named_classes(&preset.complex, &cd, &preset.named);
    let mut rep = report_for(&cd, &named)?;
    rep.preset = preset.name.clone();
    rep.partial = preset.partial;
    rep.hinge_charges = preset.hinge_charges;
    Ok(rep)
}

/// Full report for cofiltration data. Every generator of `K_*(A_0)` is
/// evaluated when `named` is empty.
pub fn report_for(cd: &CofiltrationData, named: &[NamedClass]) -> Result<KssReport> {
    let c1 = cd.couple()?;
    let all = pages(&c1)?;
    let n = cd.length();
    let levels = (0..=n)
        .map(|p| LevelGroups {
            level: p,
            name: cd.level_names.get(p).cloned().unwrap_or_default(),
            k_e: [(&cd.k_e[p][0]).into(), (&cd.k_e[p][1]).into()],
            k_a: [(&cd.k_a[p][0]).into(), (&cd.k_a[p][1]).into()],
        })
        .collect();
    let mut page_entries = Vec::new();
    let mut differentials = Vec::new();
    for c in &all {
        for p in 0..=n {
            for k in 0..2 {
                page_entries.push(PageEntry { r: c.page, p, k, name: c.e[p][k].name() });
                if p + c.page <= n {
                    let d = c.differential(p, k);
                    let cok = super::group::Subquotient::new(
                        &d.target,
                        &super::snf::Lattice::full(d.target.ngens()),
                        &d.image_lattice(),
                    )?
                    .group
                    .name();
                    differentials.push(Differential {
                        r: c.page,
                        p,
                        k,
                        source: (&d.source).into(),
                        target: (&d.target).into(),
                        matrix: d.matrix.to_i64_rows(),
                        image_factors: invariant_factors(&d.matrix),
                        cokernel: cok,
                    });
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut lift_ok = true;
    let mut boundary_maps = Vec::new();
    let default_named: Vec<NamedClass>;
    let named = if named.is_empty() {
        default_named = (0..2)
            .flat_map(|k| {
                let g = &cd.k_a[0][k];
                (0..g.ngens()).map(move |i| {
                    let mut v = vec![BigInt::zero(); g.ngens()];
                    v[i] = BigInt::from(1);
                    (g.labels[i].clone(), k, v)
                })
            })
            .collect();
        &default_named[..]
    } else {
        named
    };
    for r in 1..=n {
        for k in 0..2 {
            let h = higher_boundary_map(&c1, r, k)?;
            if h.check_lift_independence(&mut rng, 3).is_err() {
                lift_ok = false;
            }
            let mut evaluations = Vec::new();
            for (label, kk, v) in named {
                if *kk != k {
                    continue;
                }
                let val = h.evaluate(v)?;
                let cod = &h.codomain.group;
                evaluations.push(match val {
                    None => Evaluation { class: label.clone(), in_domain: false, value: None, zero: None, generator: None },
                    Some(x) => {
                        let zero = cod.is_zero_elem(&x);
                        let generator = generates(cod, &x);
                        let labels = &h.codomain.group.labels;
                        Evaluation {
                            class: label.clone(),
                            in_domain: true,
                            value: Some(combo(labels, &x)),
                            zero: Some(zero),
                            generator: Some(generator),
                        }
                    }
                });
            }
            boundary_maps.push(BoundarySummary {
                r,
                k,
                domain: (&h.domain.group).into(),
                codomain: (&h.codomain.group).into(),
                matrix: h.map.matrix.to_i64_rows(),
                zero: h.is_zero(),
                evaluations,
            });
        }
    }
    Ok(KssReport {
        preset: cd.name.clone(),
        partial: false,
        hinge_charges: None,
        levels,
        pages: page_entries,
        differentials,
        boundary_maps,
        checks: Checks { exact: true, homology_route: true, closed_form: true, lift_independent: lift_ok },
    })
}

/// `x` generates the (cyclic) group `g`.
fn generates(g: &FGAbelianGroup, x: &[BigInt]) -> bool {
    let cyc = FGAbelianGroup::new(
        g.ngens(),
        g.relations.hcat(&super::zmat::ZMat::from_cols(g.ngens(), &[x.to_vec()])),
        g.labels.clone(),
    );
    !g.is_trivial() && cyc.is_trivial()
}
