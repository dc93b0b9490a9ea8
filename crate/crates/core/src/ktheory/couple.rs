//! Exact couples keyed by filtration level and K-degree parity, their
//! derivation, and the higher boundary maps of a cofiltration.

use super::group::{induced, FGAbelianGroup, GroupMap, Subquotient};
use super::snf::{image, preimage, Lattice};
use super::zmat::ZMat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// K-groups of a cofiltration `A_n → … → A_0` and its ideals `E_p`, with the
/// maps of the long exact sequences. Index `[p][k]` is level `p`, degree `k mod 2`.
#[derive(Clone, Debug)]
pub struct CofiltrationData {
    pub name: String,
    pub level_names: Vec<String>,
    pub k_a: Vec<[FGAbelianGroup; 2]>,
    pub k_e: Vec<[FGAbelianGroup; 2]>,
    /// `alpha[p][k] : K_k(A_p) → K_k(A_{p−1})`, for `p ≥ 1` (entry 0 is unused).
    pub alpha: Vec<[ZMat; 2]>,
    /// `beta[p][k] : K_k(A_{p−1}) → K_{1−k}(E_p)`, for `p ≥ 1` (entry 0 is unused).
    pub beta: Vec<[ZMat; 2]>,
    /// `gamma[p][k] : K_k(E_p) → K_k(A_p)`.
    pub gamma: Vec<[ZMat; 2]>,
}

impl CofiltrationData {
    pub fn length(&self) -> usize {
        self.k_a.len() - 1
    }

    pub fn couple(&self) -> Result<ExactCouple> {
        let n = self.length();
        let mut alpha = Vec::with_capacity(n + 1);
        let mut beta = Vec::with_capacity(n + 1);
        let mut gamma = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let a: [GroupMap; 2] = std::array::from_fn(|k| {
                if p == 0 {
                    GroupMap::zero(self.k_a[0][k].clone(), FGAbelianGroup::trivial())
                } else {
                    GroupMap { source: self.k_a[p][k].clone(), target: self.k_a[p - 1][k].clone(), matrix: self.alpha[p][k].clone() }
                }
            });
            let b: [GroupMap; 2] = std::array::from_fn(|k| {
                if p == n {
                    GroupMap::zero(self.k_a[n][k].clone(), FGAbelianGroup::trivial())
                } else {
                    GroupMap {
                        source: self.k_a[p][k].clone(),
                        target: self.k_e[p + 1][1 - k].clone(),
                        matrix: self.beta[p + 1][k].clone(),
                    }
                }
            });
            let g: [GroupMap; 2] = std::array::from_fn(|k| GroupMap {
                source: self.k_e[p][k].clone(),
                target: self.k_a[p][k].clone(),
                matrix: self.gamma[p][k].clone(),
            });
            alpha.push(a);
            beta.push(b);
            gamma.push(g);
        }
        for maps in alpha.iter().chain(&beta).chain(&gamma) {
            for m in maps {
                check_shape(m)?;
                if !m.well_defined() {
                    return Err(Error::NotExact("a structure map does not respect relations".into()));
                }
            }
        }
        let c = ExactCouple {
            page: 1,
            d: self.k_a.clone(),
            e: self.k_e.clone(),
            alpha,
            beta,
            gamma,
        };
        c.verify()?;
        Ok(c)
    }

    pub fn to_spec(&self) -> CofiltrationSpec {
        let g = |x: &FGAbelianGroup| GroupSpec { labels: x.labels.clone(), relations: cols_i64(&x.relations) };
        let m = |x: &ZMat| x.to_i64_rows();
        CofiltrationSpec {
            name: self.name.clone(),
            level_names: self.level_names.clone(),
            k_a: self.k_a.iter().map(|v| [g(&v[0]), g(&v[1])]).collect(),
            k_e: self.k_e.iter().map(|v| [g(&v[0]), g(&v[1])]).collect(),
            alpha: self.alpha.iter().map(|v| [m(&v[0]), m(&v[1])]).collect(),
            beta: self.beta.iter().map(|v| [m(&v[0]), m(&v[1])]).collect(),
            gamma: self.gamma.iter().map(|v| [m(&v[0]), m(&v[1])]).collect(),
        }
    }
}

fn check_shape(m: &GroupMap) -> Result<()> {
    if m.matrix.rows() != m.target.ngens() || m.matrix.cols() != m.source.ngens() {
        return Err(Error::Argument(format!(
            "structure map is {}x{} between groups with {} and {} generators",
            m.matrix.rows(),
            m.matrix.cols(),
            m.source.ngens(),
            m.target.ngens()
        )));
    }
    Ok(())
}

fn cols_i64(m: &ZMat) -> Vec<Vec<i64>> {
    m.transpose().to_i64_rows()
}

/// JSON form of a finitely generated abelian group: relation vectors listed one per entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub labels: Vec<String>,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FGAbelianGroup> {
        let n = self.labels.len();
        if let Some(r) = self.relations.iter().find(|r| r.len() != n) {
            return Err(Error::Argument(format!("relation {r:?} does not have {n} entries")));
        }
        let rel = if self.relations.is_empty() { ZMat::zeros(n, 0) } else { ZMat::from_rows(&self.relations).transpose() };
        Ok(FGAbelianGroup::new(n, rel, self.labels.clone()))
    }
}

/// JSON form of [`CofiltrationData`]; matrices are row lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CofiltrationSpec {
    pub name: String,
    #[serde(default)]
    pub level_names: Vec<String>,
    pub k_a: Vec<[GroupSpec; 2]>,
    pub k_e: Vec<[GroupSpec; 2]>,
    pub alpha: Vec<[Vec<Vec<i64>>; 2]>,
    pub beta: Vec<[Vec<Vec<i64>>; 2]>,
    pub gamma: Vec<[Vec<Vec<i64>>; 2]>,
}

impl CofiltrationSpec {
    pub fn build(&self) -> Result<CofiltrationData> {
        let levels = self.k_a.len();
        if levels == 0 || self.k_e.len() != levels || self.gamma.len() != levels {
            return Err(Error::Argument("k_a, k_e and gamma need one entry per level".into()));
        }
        if self.alpha.len() != levels || self.beta.len() != levels {
            return Err(Error::Argument("alpha and beta need one entry per level (entry 0 is ignored)".into()));
        }
        let grp = |v: &[GroupSpec; 2]| -> Result<[FGAbelianGroup; 2]> { Ok([v[0].build()?, v[1].build()?]) };
        let k_a = self.k_a.iter().map(grp).collect::<Result<Vec<_>>>()?;
        let k_e = self.k_e.iter().map(grp).collect::<Result<Vec<_>>>()?;
        let mat = |rows: &Vec<Vec<i64>>, r: usize, c: usize| -> Result<ZMat> {
            if rows.is_empty() {
                return Ok(ZMat::zeros(r, c));
            }
            let m = ZMat::from_rows(rows);
            if m.rows() != r || m.cols() != c {
                return Err(Error::Argument(format!("matrix is {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
            Ok(m)
        };
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut gamma = Vec::new();
        for p in 0..levels {
            let mut a = [ZMat::zeros(0, 0), ZMat::zeros(0, 0)];
            let mut b = [ZMat::zeros(0, 0), ZMat::zeros(0, 0)];
            let mut g = [ZMat::zeros(0, 0), ZMat::zeros(0, 0)];
            for k in 0..2 {
                if p > 0 {
                    a[k] = mat(&self.alpha[p][k], k_a[p - 1][k].ngens(), k_a[p][k].ngens())?;
                    b[k] = mat(&self.beta[p][k], k_e[p][1 - k].ngens(), k_a[p - 1][k].ngens())?;
                }
                g[k] = mat(&self.gamma[p][k], k_a[p][k].ngens(), k_e[p][k].ngens())?;
            }
            alpha.push(a);
            beta.push(b);
            gamma.push(g);
        }
        let level_names =
            if self.level_names.len() == levels { self.level_names.clone() } else { (0..levels).map(|p| format!("level{p}")).collect() };
        Ok(CofiltrationData { name: self.name.clone(), level_names, k_a, k_e, alpha, beta, gamma })
    }
}

/// Exact couple on page `r`: `α : D_p → D_{p−1}`, `β : D_p → E_{p+r}` (degree
/// flips), `γ : E_p → D_p`. Above the top level `α` is the identity.
#[derive(Clone, Debug)]
pub struct ExactCouple {
    pub page: usize,
    pub d: Vec<[FGAbelianGroup; 2]>,
    pub e: Vec<[FGAbelianGroup; 2]>,
    pub alpha: Vec<[GroupMap; 2]>,
    pub beta: Vec<[GroupMap; 2]>,
    pub gamma: Vec<[GroupMap; 2]>,
}

fn lattice_eq(a: &Lattice, b: &Lattice) -> bool {
    a.equals(b)
}

impl ExactCouple {
    pub fn top(&self) -> usize {
        self.d.len() - 1
    }

    /// `d^r = β ∘ γ : E_p^k → E_{p+r}^{1−k}`.
    pub fn differential(&self, p: usize, k: usize) -> GroupMap {
        self.beta[p][k].compose(&self.gamma[p][k])
    }

    /// Kernel equals image at every node of the exact cycle.
    pub fn verify(&self) -> Result<()> {
        let n = self.top();
        let r = self.page;
        for p in 0..=n {
            for k in 0..2 {
                // at D_p: ker α = im γ
                if !lattice_eq(&self.alpha[p][k].kernel_lattice(), &self.gamma[p][k].image_lattice()) {
                    return Err(Error::NotExact(format!("page {r}: ker α ≠ im γ at D_{p} (degree {k})")));
                }
                // at D_p: ker β = im α_{p+1}
                let im_a = if p == n {
                    Lattice::full(self.d[p][k].ngens())
                } else {
                    self.alpha[p + 1][k].image_lattice()
                };
                if !lattice_eq(&self.beta[p][k].kernel_lattice(), &im_a) {
                    return Err(Error::NotExact(format!("page {r}: ker β ≠ im α at D_{p} (degree {k})")));
                }
                // at E_p: ker γ = im β_{p−r}
                let im_b = if p >= r {
                    self.beta[p - r][1 - k].image_lattice()
                } else {
                    self.e[p][k].relation_lattice().clone()
                };
                if !lattice_eq(&self.gamma[p][k].kernel_lattice(), &im_b) {
                    return Err(Error::NotExact(format!("page {r}: ker γ ≠ im β at E_{p} (degree {k})")));
                }
            }
        }
        Ok(())
    }

    /// Lattices `(cycles, boundaries)` of the next page inside `E_p^k`, from
    /// `γ^{-1}(im α) / β(ker α)`.
    fn next_lattices(&self, p: usize, k: usize) -> (Lattice, Lattice) {
        let n = self.top();
        let im_a = if p == n {
            Lattice::full(self.d[p][k].ngens())
        } else {
            self.alpha[p + 1][k].image_lattice()
        };
        let sub = preimage(&self.gamma[p][k].matrix, &im_a);
        let quot = if p >= self.page {
            let q = p - self.page;
            let ker = self.alpha[q][1 - k].kernel_lattice();
            image(&self.beta[q][1 - k].matrix, &ker).sum(self.e[p][k].relation_lattice())
        } else {
            self.e[p][k].relation_lattice().clone()
        };
        (sub, quot)
    }

    /// Lattices `(ker d, im d)` inside `E_p^k`, computed from the differential alone.
    pub fn homology_lattices(&self, p: usize, k: usize) -> (Lattice, Lattice) {
        let z = self.differential(p, k).kernel_lattice();
        let b = if p >= self.page {
            self.differential(p - self.page, 1 - k).image_lattice()
        } else {
            self.e[p][k].relation_lattice().clone()
        };
        (z, b)
    }

    /// Derived couple. The output is verified exact.
    pub fn derive(&self) -> Result<ExactCouple> {
        self.verify()?;
        let n = self.top();
        let r = self.page;
        let mut sq_d: Vec<Vec<Subquotient>> = Vec::with_capacity(n + 1);
        let mut sq_e: Vec<Vec<Subquotient>> = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let mut ds = Vec::new();
            let mut es = Vec::new();
            for k in 0..2 {
                let g = &self.d[p][k];
                let sub = if p == n { Lattice::full(g.ngens()) } else { self.alpha[p + 1][k].image_lattice() };
                ds.push(Subquotient::new(g, &sub, g.relation_lattice())?);
                let (zs, bs) = self.next_lattices(p, k);
                es.push(Subquotient::new(&self.e[p][k], &zs, &bs)?);
            }
            sq_d.push(ds);
            sq_e.push(es);
        }
        let trivial = FGAbelianGroup::trivial;
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut gamma = Vec::new();
        for p in 0..=n {
            let mut a = Vec::new();
            let mut b = Vec::new();
            let mut g = Vec::new();
            for k in 0..2 {
                let src = sq_d[p][k].group.clone();
                a.push(if p == 0 {
                    GroupMap::zero(src.clone(), trivial())
                } else {
                    let m = induced(&self.alpha[p][k].matrix, &sq_d[p][k], &sq_d[p - 1][k])?;
                    GroupMap { source: src.clone(), target: sq_d[p - 1][k].group.clone(), matrix: m }
                });
                g.push(GroupMap {
                    source: sq_e[p][k].group.clone(),
                    target: src.clone(),
                    matrix: induced(&self.gamma[p][k].matrix, &sq_e[p][k], &sq_d[p][k])?,
                });
                // β'(α x) = [β x]
                let t = p + r + 1;
                b.push(if t > n || p == n {
                    GroupMap::zero(src.clone(), trivial())
                } else {
                    let alpha_next = &self.alpha[p + 1][k];
                    let solver = Lattice::new(alpha_next.matrix.hcat(&self.d[p][k].relations));
                    let nx = alpha_next.matrix.cols();
                    let target = &sq_e[t][1 - k];
                    let tl = Lattice::new(target.lift.hcat(target.quot.generators()));
                    let nt = target.lift.cols();
                    let mut cols = Vec::new();
                    for y in sq_d[p][k].lift.columns() {
                        let x = solver
                            .solve(&y)
                            .ok_or_else(|| Error::Consistency("element of im α has no preimage".into()))?;
                        let z = self.beta[p + 1][k].matrix.mul_vec(&x[..nx]);
                        let c = tl
                            .solve(&z)
                            .ok_or_else(|| Error::Consistency("β of a lift is not a cycle of the next page".into()))?;
                        cols.push(c[..nt].to_vec());
                    }
                    GroupMap { source: src.clone(), target: target.group.clone(), matrix: ZMat::from_cols(nt, &cols) }
                });
            }
            alpha.push([a.remove(0), a.remove(0)]);
            beta.push([b.remove(0), b.remove(0)]);
            gamma.push([g.remove(0), g.remove(0)]);
        }
        let out = ExactCouple {
            page: r + 1,
            d: sq_d.iter().map(|v| [v[0].group.clone(), v[1].group.clone()]).collect(),
            e: sq_e.iter().map(|v| [v[0].group.clone(), v[1].group.clone()]).collect(),
            alpha,
            beta,
            gamma,
        };
        out.verify()?;
        Ok(out)
    }

    /// Checks that the derived `E` lattices coincide with the homology of `d^r`.
    pub fn check_homology_route(&self) -> Result<()> {
        for p in 0..=self.top() {
            for k in 0..2 {
                let (a, b) = self.next_lattices(p, k);
                let (z, bd) = self.homology_lattices(p, k);
                if !lattice_eq(&a, &z) || !lattice_eq(&b, &bd) {
                    return Err(Error::Consistency(format!(
                        "page {}: derived E_{p} (degree {k}) differs from the homology of d",
                        self.page
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn e_names(&self) -> Vec<[String; 2]> {
        self.e.iter().map(|v| [v[0].name(), v[1].name()]).collect()
    }
}

/// `α^m : D_{from} → D_{from−m}` on page 1, with the identity above the top level.
fn alpha_power(c: &ExactCouple, from: usize, m: usize, k: usize) -> ZMat {
    let n = c.top();
    let mut mat = ZMat::identity(c.d[from.min(n)][k].ngens());
    let mut p = from;
    for _ in 0..m {
        if p <= n {
            mat = c.alpha[p][k].matrix.mul(&mat);
        }
        p -= 1;
    }
    mat
}

/// `E^r_p` computed directly from the first page as
/// `γ^{-1} α^{r−1}(D_{p+r−1}) / β(ker α^{r−1} on D_{p−1})`.
pub fn closed_form_page(c1: &ExactCouple, r: usize, p: usize, k: usize) -> Result<FGAbelianGroup> {
    if c1.page != 1 {
        return Err(Error::Argument("closed form needs the first page".into()));
    }
    let from = p + r - 1;
    let am = alpha_power(c1, from, r - 1, k);
    let im = image(&am, &Lattice::full(am.cols())).sum(c1.d[p][k].relation_lattice());
    let sub = preimage(&c1.gamma[p][k].matrix, &im);
    let quot = if p >= 1 {
        let q = p - 1;
        let ker = if q + 1 >= r {
            let a = alpha_power(c1, q, r - 1, 1 - k);
            preimage(&a, c1.d[q + 1 - r][1 - k].relation_lattice())
        } else {
            Lattice::full(c1.d[q][1 - k].ngens())
        };
        image(&c1.beta[q][1 - k].matrix, &ker).sum(c1.e[p][k].relation_lattice())
    } else {
        c1.e[p][k].relation_lattice().clone()
    };
    Ok(Subquotient::new(&c1.e[p][k], &sub, &quot)?.group)
}

/// All pages `E^1 … E^{n+1}`, each derivation checked against the homology
/// of the previous differential and against the closed form.
pub fn pages(c1: &ExactCouple) -> Result<Vec<ExactCouple>> {
    let mut out = vec![c1.clone()];
    for _ in 0..=c1.top() {
        let cur = out.last().expect("nonempty");
        cur.check_homology_route()?;
        let next = cur.derive()?;
        for p in 0..=next.top() {
            for k in 0..2 {
                let cf = closed_form_page(c1, next.page, p, k)?;
                if cf.canonical() != next.e[p][k].canonical() {
                    return Err(Error::Consistency(format!(
                        "page {}: E_{p} (degree {k}) is {} by derivation but {} by the closed form",
                        next.page,
                        next.e[p][k].name(),
                        cf.name()
                    )));
                }
            }
        }
        out.push(next);
    }
    Ok(out)
}

/// `δ^r` in degree `k`: domain `Im s^{r−1} ⊆ K_k(A_0)`, codomain
/// `Im ∂^r / ∂^r(Ker s^{r−1}) ⊆ K_{k−1}(E_r)`.
#[derive(Clone, Debug)]
pub struct HigherBoundaryMap {
    pub r: usize,
    pub k: usize,
    pub domain: Subquotient,
    pub codomain: Subquotient,
    pub map: GroupMap,
    /// `s^{r−1}` and `∂^r` on page-1 coordinates.
    s: ZMat,
    boundary: ZMat,
    ker_s: Lattice,
    d0_rel: Lattice,
}

pub fn higher_boundary_map(c1: &ExactCouple, r: usize, k: usize) -> Result<HigherBoundaryMap> {
    if c1.page != 1 {
        return Err(Error::Argument("higher boundary maps are read off the first page".into()));
    }
    if r == 0 || r > c1.top() {
        return Err(Error::Argument(format!("r = {r} outside 1..={}", c1.top())));
    }
    let d0 = &c1.d[0][k];
    let s = alpha_power(c1, r - 1, r - 1, k);
    let dom_lat = image(&s, &Lattice::full(s.cols())).sum(d0.relation_lattice());
    let domain = Subquotient::new(d0, &dom_lat, d0.relation_lattice())?;
    let boundary = c1.beta[r - 1][k].matrix.clone();
    let er = &c1.e[r][1 - k];
    let ker_s = preimage(&s, d0.relation_lattice());
    let im = image(&boundary, &Lattice::full(boundary.cols())).sum(er.relation_lattice());
    let q = image(&boundary, &ker_s).sum(er.relation_lattice());
    let codomain = Subquotient::new(er, &im, &q)?;
    let mut h = HigherBoundaryMap {
        r,
        k,
        map: GroupMap::zero(domain.group.clone(), codomain.group.clone()),
        domain,
        codomain,
        s,
        boundary,
        ker_s,
        d0_rel: d0.relation_lattice().clone(),
    };
    let mut cols = Vec::new();
    for y in h.domain.lift.columns() {
        let x = h.lift::<rand::rngs::ThreadRng>(&y, None)?;
        cols.push(h.project(&h.boundary.mul_vec(&x))?);
    }
    h.map = GroupMap::new(h.domain.group.clone(), h.codomain.group.clone(), ZMat::from_cols(h.codomain.lift.cols(), &cols))?;
    Ok(h)
}

impl HigherBoundaryMap {
    /// A preimage of `y ∈ Im s^{r−1}`, shifted by a random element of `Ker s^{r−1}`.
    fn lift<R: Rng>(&self, y: &[BigInt], rng: Option<&mut R>) -> Result<Vec<BigInt>> {
        let solver = Lattice::new(self.s.hcat(self.d0_rel.generators()));
        let nx = self.s.cols();
        let x = solver.solve(y).ok_or_else(|| Error::Consistency("domain generator has no lift".into()))?;
        let mut x = x[..nx].to_vec();
        if let Some(rng) = rng {
            for col in self.ker_s.generators().columns() {
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                for (xi, ci) in x.iter_mut().zip(col) {
                    *xi += &c * ci;
                }
            }
        }
        Ok(x)
    }

    fn project(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let tl = Lattice::new(self.codomain.lift.hcat(self.codomain.quot.generators()));
        let nt = self.codomain.lift.cols();
        let c = tl.solve(z).ok_or_else(|| Error::Consistency("boundary of a lift left Im ∂^r".into()))?;
        Ok(c[..nt].to_vec())
    }

    /// Recomputes the map with `trials` randomized lifts and checks each
    /// agrees with the stored map modulo the codomain relations.
    pub fn check_lift_independence<R: Rng>(&self, rng: &mut R, trials: usize) -> Result<()> {
        for _ in 0..trials {
            for (j, y) in self.domain.lift.columns().iter().enumerate() {
                let x = self.lift(y, Some(&mut *rng))?;
                let c = self.project(&self.boundary.mul_vec(&x))?;
                let stored = self.map.matrix.col(j);
                if !self.codomain.group.equal_elems(&c, &stored) {
                    return Err(Error::Consistency(format!("δ^{} depends on the lift of generator {j}", self.r)));
                }
            }
        }
        Ok(())
    }

    /// `δ^r` of an element of `K_k(A_0)` in page-1 coordinates, returned in
    /// codomain generator coordinates; `None` when the element is outside the domain.
    pub fn evaluate(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let Some(c) = self.domain.coords_mod(x) else {
            return Ok(None);
        };
        Ok(Some(self.map.apply(&c)))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

impl Subquotient {
    /// Coordinates of `x` modulo the quotient lattice, if `x ∈ sub`.
    pub fn coords_mod(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let tl = Lattice::new(self.lift.hcat(self.quot.generators()));
        let nt = self.lift.cols();
        tl.solve(x).map(|c| c[..nt].to_vec())
    }
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}
