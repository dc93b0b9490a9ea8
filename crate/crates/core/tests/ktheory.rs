use hoti_core::ktheory::presets::{
    c2t, c4t, inversion, preset, ChernComplex, Normal, SignedPerm, PRESETS,
};
use hoti_core::ktheory::report::report;
use hoti_core::ktheory::snf::{image, preimage};
use hoti_core::ktheory::zmat::zvec;
use hoti_core::ktheory::{
    higher_boundary_map, pages, random_complex, smith_normal_form, FGAbelianGroup, FilteredComplex, Lattice,
    Subquotient, ZMat,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Parity-`k` generators of the complex, as indices.
fn of_parity(c: &FilteredComplex, k: usize) -> Vec<usize> {
    (0..c.gens.len()).filter(|&i| c.gens[i].parity == k).collect()
}

/// Span of the parity-`k` generators at levels `≥ p`, inside `Z^{#parity k}`.
fn tail(c: &FilteredComplex, k: usize, p: isize) -> Lattice {
    let idx = of_parity(c, k);
    let vs: Vec<Vec<BigInt>> = idx
        .iter()
        .enumerate()
        .filter(|(_, &g)| c.gens[g].level as isize >= p)
        .map(|(j, _)| {
            let mut v = vec![BigInt::zero(); idx.len()];
            v[j] = BigInt::one();
            v
        })
        .collect();
    Lattice::from_vecs(idx.len(), &vs)
}

/// Block of the differential from parity `k` to parity `1 − k`.
fn block(c: &FilteredComplex, k: usize) -> ZMat {
    c.d.select_rows(&of_parity(c, 1 - k)).select_cols(&of_parity(c, k))
}

/// `Z_r^p = {x ∈ G^p : dx ∈ G^{p+r}}` in parity `k`.
fn cycles(c: &FilteredComplex, r: usize, p: isize, k: usize) -> Lattice {
    let g = tail(c, k, p);
    let pre = preimage(&block(c, k), &tail(c, 1 - k, p + r as isize));
    g.intersect(&pre)
}

/// Textbook page of the decreasing filtration by "level ≥ p":
/// `E_r^p = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1})`.
fn oracle_page(c: &FilteredComplex, r: usize, p: usize, k: usize) -> String {
    let p = p as isize;
    let z = cycles(c, r, p, k);
    let inner = cycles(c, r - 1, p + 1, k);
    let src = cycles(c, r - 1, p - r as isize + 1, 1 - k);
    let bd = image(&block(c, 1 - k), &src);
    let n = of_parity(c, k).len();
    let free = FGAbelianGroup::free_n(n, "g");
    Subquotient::new(&free, &z, &inner.sum(&bd)).expect("nested lattices").group.name()
}

fn assert_pages_match(c: &FilteredComplex) {
    let cd = c.cofiltration().unwrap();
    let all = pages(&cd.couple().unwrap()).unwrap();
    for page in &all {
        for p in 0..=c.top() {
            for k in 0..2 {
                assert_eq!(page.e[p][k].name(), oracle_page(c, page.page, p, k), "E^{} p={p} k={k}", page.page);
            }
        }
    }
}

#[test]
fn smith_examples() {
    let m = ZMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal(), zvec(&[2, 6, 12]));
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    let z2 = FGAbelianGroup::new(2, ZMat::from_rows(&[vec![1, 1], vec![1, -1]]), vec!["a".into(), "b".into()]);
    assert_eq!(z2.name(), "Z2");
    assert_eq!(FGAbelianGroup::free_n(3, "x").name(), "Z^3");
    assert!(FGAbelianGroup::cyclic(1, "t").is_trivial());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_is_a_unimodular_diagonalization(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rand::Rng::gen_range(&mut rng, -6i64..=6)).collect()).collect();
        let m = ZMat::from_rows(&data);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), ZMat::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), ZMat::identity(cols));
        let diag = s.diagonal();
        for i in 0..s.rank {
            prop_assert!(diag[i] > BigInt::zero());
            if i + 1 < s.rank {
                prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
            }
        }
        prop_assert!(diag[s.rank..].iter().all(|x| x.is_zero()));
    }
}

#[test]
fn random_complexes_match_the_filtered_complex_pages() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let levels = 2 + i % 3;
        let ngens = 3 + (i * 7) % 8;
        let c = random_complex(&mut rng, levels, ngens);
        assert_pages_match(&c);
    }
}

#[test]
fn pages_are_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let c = random_complex(&mut rng, 3, 8);
        let c2 = c.conjugate(&mut rng, 0.5);
        let a = pages(&c.cofiltration().unwrap().couple().unwrap()).unwrap();
        let b = pages(&c2.cofiltration().unwrap().couple().unwrap()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.e_names(), y.e_names());
        }
    }
}

#[test]
fn higher_boundary_lifts_are_independent_of_choices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let c = random_complex(&mut rng, 3, 9);
        let c1 = c.cofiltration().unwrap().couple().unwrap();
        for r in 1..=c.top() {
            for k in 0..2 {
                higher_boundary_map(&c1, r, k).unwrap().check_lift_independence(&mut rng, 4).unwrap();
            }
        }
    }
}

#[test]
fn presets_match_the_filtered_complex_pages() {
    for name in PRESETS {
        let p = preset(name, None).unwrap();
        assert_pages_match(&p.complex);
        let rep = report(&p).unwrap();
        assert!(rep.checks.exact && rep.checks.closed_form && rep.checks.homology_route && rep.checks.lift_independent);
    }
}

#[test]
fn group_actions_square_to_the_cyclic_order() {
    let sq = ChernComplex::square(3).unwrap();
    for (g, order) in [(inversion(), 2), (c2t(), 2), (c4t(), 4)] {
        let a = sq.action(&g).unwrap();
        let mut p = ZMat::identity(a.rows());
        for _ in 0..order {
            p = a.mul(&p);
        }
        assert_eq!(p, ZMat::identity(a.rows()), "{g:?}");
    }
    // a lone antilinear identity is not a symmetry of the bulk Chern classes
    let t = SignedPerm { images: SignedPerm::identity(3).images, antilinear: true };
    assert_ne!(sq.action(&t).unwrap(), ZMat::identity(sq.gens.len()));
}

#[test]
fn inversion_images_of_the_boundary() {
    let rep = report(&preset("square-inversion", None).unwrap()).unwrap();
    let d = rep.differential(1, 1, 0).unwrap();
    assert_eq!(d.image_factors, vec![1, 2]);
    assert_eq!(d.cokernel, "Z2");
    let b = rep.boundary(2, 0).unwrap();
    assert_eq!(b.codomain.name, "Z2");
    let ev = b.evaluations.iter().find(|e| e.class == "x_Ham1").unwrap();
    assert_eq!(ev.generator, Some(true));
}

#[test]
fn plain_square_sums_vanish() {
    // image of the face classes in the hinge charges is the sum-zero lattice
    let sq = ChernComplex::square(3).unwrap();
    let corners: Vec<usize> = (1..=4).map(|l| sq.stratum_index(&format!("C{l}")).unwrap()).collect();
    let rows: Vec<usize> = corners.iter().map(|&s| sq.gen_index(s, &[3]).unwrap()).collect();
    let faces: Vec<usize> = (1..=4).map(|l| sq.stratum_index(&format!("F{l}")).unwrap()).collect();
    let cols: Vec<usize> =
        (0..sq.gens.len()).filter(|&j| faces.contains(&sq.gens[j].stratum) && sq.gens[j].parity() == 0).collect();
    let m = sq.boundary.select_rows(&rows).select_cols(&cols);
    let img = Lattice::new(m);
    let sum_zero = Lattice::from_vecs(4, &[zvec(&[1, -1, 0, 0]), zvec(&[0, 1, -1, 0]), zvec(&[0, 0, 1, -1])]);
    assert!(img.equals(&sum_zero));
    for name in ["square-plain-2", "square-plain-3"] {
        let rep = report(&preset(name, None).unwrap()).unwrap();
        assert!(rep.boundary(2, 0).unwrap().zero);
    }
}

#[test]
fn cube_hinge_kernel_is_the_kirchhoff_lattice() {
    let cube = ChernComplex::cube().unwrap();
    let hinge_gens: Vec<usize> = (0..cube.gens.len())
        .filter(|&j| {
            let s = &cube.strata[cube.gens[j].stratum];
            s.normals.len() == 2 && cube.gens[j].subset.len() == 1
        })
        .collect();
    let corner_gens: Vec<usize> = (0..cube.gens.len())
        .filter(|&j| cube.strata[cube.gens[j].stratum].normals.len() == 3 && cube.gens[j].subset.is_empty())
        .collect();
    assert_eq!((hinge_gens.len(), corner_gens.len()), (12, 8));
    let block = cube.boundary.select_rows(&corner_gens).select_cols(&hinge_gens);
    // geometric incidence: +1 where the hinge ends on the corner at its + end
    let mut inc = ZMat::zeros(8, 12);
    for (j, &h) in hinge_gens.iter().enumerate() {
        let hs = &cube.strata[cube.gens[h].stratum];
        let axis = cube.gens[h].subset[0];
        for (i, &c) in corner_gens.iter().enumerate() {
            let cs = &cube.strata[cube.gens[c].stratum];
            if hs.normals.iter().all(|n| cs.normals.contains(n)) {
                let end = cs.normals.iter().find(|n| n.axis == axis).unwrap();
                inc.set(i, j, BigInt::from(end.sign as i64));
            }
        }
    }
    let k1 = Lattice::new(hoti_core::ktheory::snf::kernel(&block));
    let k2 = Lattice::new(hoti_core::ktheory::snf::kernel(&inc));
    assert_eq!(k1.rank(), 5);
    assert!(k1.equals(&k2));
    let rep = report(&preset("cube-plain", None).unwrap()).unwrap();
    assert_eq!(rep.boundary(2, 0).unwrap().domain.name, "Z");
}

#[test]
fn normals_print_with_sign() {
    assert_eq!(Normal::new(1, 1).to_string(), "+e1");
    assert_eq!(Normal::new(3, -1).to_string(), "-e3");
}
