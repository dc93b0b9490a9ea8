//! Smith normal form with unimodular transforms, and the lattice
//! operations built on it.

use super::zmat::ZMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * m * v == d` with `d` diagonal, nonnegative, and `d[i] | d[i+1]`.
/// `u_inv` and `v_inv` are the inverses of `u` and `v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ZMat,
    pub u_inv: ZMat,
    pub d: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct State {
    a: ZMat,
    u: ZMat,
    u_inv: ZMat,
    v: ZMat,
    v_inv: ZMat,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }
    // row[dst] += q row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
        self.u_inv.add_col(src, dst, &-q);
    }
    // col[dst] += q col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
        self.v_inv.add_row(src, dst, &-q);
    }
    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(m: &ZMat) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut s = State {
        a: m.clone(),
        u: ZMat::identity(r),
        u_inv: ZMat::identity(r),
        v: ZMat::identity(c),
        v_inv: ZMat::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..r {
            for j in t..c {
                let v = s.a.get(i, j).abs();
                if !v.is_zero() && best.as_ref().is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let p = s.a.get(t, t).clone();
                let x = s.a.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_row(i, t, &-q);
                if !s.a.get(i, t).is_zero() {
                    s.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let p = s.a.get(t, t).clone();
                let x = s.a.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_col(j, t, &-q);
                if !s.a.get(t, j).is_zero() {
                    s.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = s.a.get(t, t).clone();
            let mut fixed = false;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !s.a.get(i, j).mod_floor(&p).is_zero() {
                        s.add_row(t, i, &BigInt::one());
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if s.a.get(t, t).is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..r.min(c)).take_while(|&i| !s.a.get(i, i).is_zero()).count();
    Smith { u: s.u, u_inv: s.u_inv, d: s.a, v: s.v, v_inv: s.v_inv, rank }
}

/// Lattice spanned by the columns of `gens` inside `Z^n`, held with its Smith data.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub ambient: usize,
    gens: ZMat,
    snf: Smith,
}

impl Lattice {
    pub fn new(gens: ZMat) -> Self {
        let snf = smith_normal_form(&gens);
        Lattice { ambient: gens.rows(), gens, snf }
    }

    pub fn from_vecs(ambient: usize, vs: &[Vec<BigInt>]) -> Self {
        Self::new(ZMat::from_cols(ambient, vs))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::new(ZMat::zeros(ambient, 0))
    }

    pub fn full(ambient: usize) -> Self {
        Self::new(ZMat::identity(ambient))
    }

    pub fn rank(&self) -> usize {
        self.snf.rank
    }

    pub fn generators(&self) -> &ZMat {
        &self.gens
    }

    /// A basis (linearly independent columns) of the lattice.
    pub fn basis(&self) -> ZMat {
        let mut cols = Vec::with_capacity(self.snf.rank);
        for i in 0..self.snf.rank {
            let d = self.snf.d.get(i, i);
            cols.push(self.snf.u_inv.col(i).iter().map(|x| x * d).collect());
        }
        ZMat::from_cols(self.ambient, &cols)
    }

    /// Integer coefficients `x` with `gens * x == v`, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.snf.u.mul_vec(v);
        let mut y = vec![BigInt::zero(); self.gens.cols()];
        for (i, wi) in w.iter().enumerate() {
            if i < self.snf.rank {
                let d = self.snf.d.get(i, i);
                let (q, rem) = wi.div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.gens.columns().iter().all(|c| self.contains(c))
    }

    pub fn equals(&self, other: &Lattice) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::new(self.gens.hcat(&other.gens))
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let a = self.basis();
        let b = other.basis();
        let k = kernel(&a.hcat(&b.neg()));
        let top = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
        Lattice::new(a.mul(&top))
    }
}

/// Basis of the integer kernel of `m` as columns.
pub fn kernel(m: &ZMat) -> ZMat {
    let s = smith_normal_form(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_cols(&idx)
}

/// `{ x : m x ∈ target }` as a lattice in the source.
pub fn preimage(m: &ZMat, target: &Lattice) -> Lattice {
    let b = target.basis();
    let k = kernel(&m.hcat(&b.neg()));
    let top = k.select_rows(&(0..m.cols()).collect::<Vec<_>>());
    Lattice::new(top)
}

/// Image lattice `m(l)`.
pub fn image(m: &ZMat, l: &Lattice) -> Lattice {
    Lattice::new(m.mul(&l.basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::zmat::zvec;

    fn check(m: &ZMat) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), ZMat::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), ZMat::identity(m.cols()));
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero());
            }
        }
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check(&ZMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), zvec(&[1, 6]));
    }

    #[test]
    fn plus_minus() {
        let s = check(&ZMat::from_rows(&[vec![1, 1], vec![1, -1]]));
        assert_eq!(s.diagonal(), zvec(&[1, 2]));
    }

    #[test]
    fn rectangular_and_zero() {
        check(&ZMat::from_rows(&[vec![4, 6, 0], vec![6, 9, 3]]));
        let s = check(&ZMat::zeros(2, 3));
        assert_eq!(s.rank, 0);
        check(&ZMat::zeros(0, 2));
    }

    #[test]
    fn lattice_ops() {
        let l = Lattice::new(ZMat::from_rows(&[vec![1, 1], vec![1, -1]]));
        assert!(l.contains(&zvec(&[2, 0])));
        assert!(!l.contains(&zvec(&[1, 0])));
        let x = l.solve(&zvec(&[3, 1])).unwrap();
        assert_eq!(x, zvec(&[2, 1]));
        let a = Lattice::new(ZMat::from_rows(&[vec![2], vec![0]]));
        let b = Lattice::new(ZMat::from_rows(&[vec![3, 0], vec![0, 1]]));
        let c = a.intersect(&b);
        assert!(c.equals(&Lattice::new(ZMat::from_rows(&[vec![6], vec![0]]))));
        let k = kernel(&ZMat::from_rows(&[vec![1, 2, 3]]));
        assert_eq!(k.cols(), 2);
        assert!(ZMat::from_rows(&[vec![1, 2, 3]]).mul(&k).is_zero());
    }
}
