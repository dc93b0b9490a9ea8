//! Filtered Z/2-graded chain complexes and the cofiltration data they induce.
//!
//! Generators sit at filtration levels `0..=n` with a parity. The differential
//! is odd and never lowers the level, so levels `≥ p` form a subcomplex. The
//! quotient `A_p` keeps levels `≤ p`, the ideal `E_p` is level `p` alone, and
//! `0 → E_p → A_p → A_{p−1} → 0` gives the long exact sequences.

use super::couple::CofiltrationData;
use super::group::{induced, FGAbelianGroup, Subquotient};
use super::snf::{image, kernel, Lattice};
use super::zmat::ZMat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub level: usize,
    pub parity: usize,
}

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub name: String,
    pub level_names: Vec<String>,
    pub gens: Vec<Generator>,
    /// `d[(i, j)]` is the coefficient of generator `i` in `d(generator j)`.
    pub d: ZMat,
}

impl FilteredComplex {
    pub fn new(name: &str, level_names: Vec<String>, gens: Vec<Generator>, d: ZMat) -> Result<Self> {
        let c = FilteredComplex { name: name.into(), level_names, gens, d };
        c.validate()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.level_names.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.gens.len();
        if self.d.rows() != n || self.d.cols() != n {
            return Err(Error::Argument(format!("differential must be {n}x{n}")));
        }
        if self.level_names.is_empty() {
            return Err(Error::Argument("a complex needs at least one level".into()));
        }
        for g in &self.gens {
            if g.level > self.top() || g.parity > 1 {
                return Err(Error::Argument(format!("generator {} has level {} parity {}", g.label, g.level, g.parity)));
            }
        }
        for j in 0..n {
            for i in 0..n {
                if self.d.get(i, j).is_zero() {
                    continue;
                }
                let (a, b) = (&self.gens[j], &self.gens[i]);
                if b.level < a.level {
                    return Err(Error::Argument(format!("d({}) lowers the filtration into {}", a.label, b.label)));
                }
                if b.parity == a.parity {
                    return Err(Error::Argument(format!("d({}) preserves parity at {}", a.label, b.label)));
                }
            }
        }
        if !self.d.mul(&self.d).is_zero() {
            return Err(Error::Argument("differential does not square to zero".into()));
        }
        Ok(())
    }

    fn select(&self, pred: impl Fn(&Generator) -> bool) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| pred(&self.gens[i])).collect()
    }

    /// Homology of the span of `idx` (which must be closed under the induced
    /// differential modulo the dropped generators) in parity `k`.
    fn homology(&self, idx: &[usize], k: usize) -> Result<Subquotient> {
        let src: Vec<usize> = idx.iter().copied().filter(|&i| self.gens[i].parity == k).collect();
        let tgt: Vec<usize> = idx.iter().copied().filter(|&i| self.gens[i].parity != k).collect();
        let m_out = self.d.select_rows(&tgt).select_cols(&src);
        let m_in = self.d.select_rows(&src).select_cols(&tgt);
        let labels = src.iter().map(|&i| self.gens[i].label.clone()).collect();
        let free = FGAbelianGroup::free(labels);
        let z = Lattice::new(kernel(&m_out));
        let b = image(&m_in, &Lattice::full(tgt.len()));
        Subquotient::new(&free, &z, &b)
    }

    /// Selection matrix from the generators `from` onto `to` (rows `to`, cols `from`).
    fn restriction(from: &[usize], to: &[usize]) -> ZMat {
        let mut m = ZMat::zeros(to.len(), from.len());
        for (r, &t) in to.iter().enumerate() {
            if let Some(c) = from.iter().position(|&f| f == t) {
                m.set(r, c, BigInt::one());
            }
        }
        m
    }

    pub fn cofiltration(&self) -> Result<CofiltrationData> {
        let n = self.top();
        let par = |idx: &[usize], k: usize| -> Vec<usize> {
            idx.iter().copied().filter(|&i| self.gens[i].parity == k).collect()
        };
        let mut sq_a: Vec<[Subquotient; 2]> = Vec::new();
        let mut sq_e: Vec<[Subquotient; 2]> = Vec::new();
        let mut a_idx = Vec::new();
        let mut e_idx = Vec::new();
        for p in 0..=n {
            let a = self.select(|g| g.level <= p);
            let e = self.select(|g| g.level == p);
            sq_a.push([self.homology(&a, 0)?, self.homology(&a, 1)?]);
            sq_e.push([self.homology(&e, 0)?, self.homology(&e, 1)?]);
            a_idx.push(a);
            e_idx.push(e);
        }
        let empty = || [ZMat::zeros(0, 0), ZMat::zeros(0, 0)];
        let mut alpha = vec![empty()];
        let mut beta = vec![empty()];
        let mut gamma = Vec::new();
        for p in 0..=n {
            let mut g = empty();
            for k in 0..2 {
                let inc = Self::restriction(&par(&a_idx[p], k), &par(&e_idx[p], k)).transpose();
                g[k] = induced(&inc, &sq_e[p][k], &sq_a[p][k])?;
            }
            gamma.push(g);
            if p == 0 {
                continue;
            }
            let mut a = empty();
            let mut b = empty();
            for k in 0..2 {
                let proj = Self::restriction(&par(&a_idx[p], k), &par(&a_idx[p - 1], k));
                a[k] = induced(&proj, &sq_a[p][k], &sq_a[p - 1][k])?;
                let blk = self.d.select_rows(&par(&e_idx[p], 1 - k)).select_cols(&par(&a_idx[p - 1], k));
                b[k] = induced(&blk, &sq_a[p - 1][k], &sq_e[p][1 - k])?;
            }
            alpha.push(a);
            beta.push(b);
        }
        Ok(CofiltrationData {
            name: self.name.clone(),
            level_names: self.level_names.clone(),
            k_a: sq_a.iter().map(|v| [v[0].group.clone(), v[1].group.clone()]).collect(),
            k_e: sq_e.iter().map(|v| [v[0].group.clone(), v[1].group.clone()]).collect(),
            alpha,
            beta,
            gamma,
        })
    }

    /// Conjugates the differential by `g = 1 + N`, with `N` strictly lower
    /// triangular and preserving level order and parity.
    pub fn conjugate<R: Rng>(&self, rng: &mut R, density: f64) -> FilteredComplex {
        let n = self.gens.len();
        let mut nil = ZMat::zeros(n, n);
        for j in 0..n {
            for i in (j + 1)..n {
                let (a, b) = (&self.gens[j], &self.gens[i]);
                if b.level >= a.level && b.parity == a.parity && rng.gen_bool(density) {
                    nil.set(i, j, BigInt::from(rng.gen_range(-2i64..=2)));
                }
            }
        }
        let g = ZMat::identity(n).add(&nil);
        // (1 + N)^{-1} = Σ (−N)^j, finite since N is nilpotent
        let mut inv = ZMat::identity(n);
        let mut term = ZMat::identity(n);
        let neg = nil.neg();
        for _ in 0..n {
            term = term.mul(&neg);
            if term.is_zero() {
                break;
            }
            inv = inv.add(&term);
        }
        FilteredComplex {
            name: self.name.clone(),
            level_names: self.level_names.clone(),
            gens: self.gens.clone(),
            d: g.mul(&self.d).mul(&inv),
        }
    }
}

/// Random filtered complex: generators with random levels and parities, a
/// disjoint set of pairs `e_a ↦ m e_b` (level nondecreasing, parity flipped),
/// then scrambled by a filtration-preserving unimodular change of basis.
pub fn random_complex<R: Rng>(rng: &mut R, levels: usize, ngens: usize) -> FilteredComplex {
    let mut gens: Vec<Generator> = (0..ngens)
        .map(|i| Generator { label: format!("g{i}"), level: rng.gen_range(0..levels), parity: rng.gen_range(0..2) })
        .collect();
    gens.sort_by_key(|g| g.level);
    for (i, g) in gens.iter_mut().enumerate() {
        g.label = format!("g{i}@{}", g.level);
    }
    let mut d = ZMat::zeros(ngens, ngens);
    let mut used = vec![false; ngens];
    let mut order: Vec<usize> = (0..ngens).collect();
    for i in (1..ngens).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for &a in &order {
        if used[a] || rng.gen_bool(0.3) {
            continue;
        }
        let cands: Vec<usize> = (0..ngens)
            .filter(|&b| !used[b] && b != a && gens[b].level >= gens[a].level && gens[b].parity != gens[a].parity)
            .collect();
        if cands.is_empty() {
            continue;
        }
        let b = cands[rng.gen_range(0..cands.len())];
        used[a] = true;
        used[b] = true;
        d.set(b, a, BigInt::from(rng.gen_range(1i64..=3)));
    }
    let c = FilteredComplex {
        name: "random".into(),
        level_names: (0..levels).map(|p| format!("level{p}")).collect(),
        gens,
        d,
    };
    c.conjugate(rng, 0.4)
}
