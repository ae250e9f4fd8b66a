use bmw_core::chains::{
    bulk_hamiltonian, eigenvalues_numeric, hamiltonian, kappa_coefficient, ChainA, ChainParams,
};
use bmw_core::combinatorics::{build_graph, ContentConvention, Partition};
use bmw_core::matrix::Matrix;
use bmw_core::repbuilder::{build_rep, conjugate_by_diagonal};
use bmw_core::scalars::{BigRational, Field, GenericSpecialization, Parameters, ScalarFraction};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STD: ContentConvention = ContentConvention::ColMinusRow;
const TOL: f64 = 1e-10;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL * b.norm().max(1.0)
}

/// Multiset equality up to [`TOL`], by greedy matching.
fn same_spectrum(a: &[Complex64], b: &[Complex64]) -> bool {
    let mut left: Vec<Complex64> = b.to_vec();
    a.len() == b.len()
        && a.iter().all(|x| match left.iter().position(|y| close(*y, *x)) {
            Some(i) => {
                left.swap_remove(i);
                true
            }
            None => false,
        })
}

fn boundary(s: &GenericSpecialization, xi: Complex64) -> Complex64 {
    let q = s.q_f64();
    xi * (q - 1.0 / q) / (Complex64::new(1.0, 0.0) - xi)
}

#[test]
fn one_dimensional_closed_forms() {
    let p = Parameters::<ScalarFraction>::symbolic();
    let s = GenericSpecialization::default();
    let chain = ChainParams::principal(ChainA::Q, &s);

    let row = build_rep(&p, &part("2"), 2, STD).unwrap();
    let h = hamiltonian(&row, &p, &chain, &s).unwrap();
    assert_eq!(h.bulk.as_scalar(), Some(p.q.clone()));
    let ev = eigenvalues_numeric(&h).unwrap();
    assert!(close(ev[0], Complex64::new(2.0, 0.0) + boundary(&s, chain.xi)));

    let empty = build_rep(&p, &part(""), 2, STD).unwrap();
    let h = hamiltonian(&empty, &p, &chain, &s).unwrap();
    let expected = &p.nu + &(&(&p.qq * &p.nu) * &p.mu).checked_div(&(&p.nu + &p.q)).unwrap();
    assert_eq!(h.bulk.as_scalar(), Some(expected.clone()));
    let value = bmw_core::scalars::ratio_to_f64(&expected.specialize(&s).unwrap());
    let ev = eigenvalues_numeric(&h).unwrap();
    assert!(close(ev[0], Complex64::new(value, 0.0) + boundary(&s, chain.xi)));
}

/// Eigenvalues of the ((1), 3) chain at q = 2, nu = 3 with the principal
/// root of xi^2 = -a nu, from an independent dense eigenvalue routine.
#[test]
fn pinned_three_dimensional_spectra() {
    let pinned: [(ChainA, [(f64, f64); 3]); 4] = [
        (
            ChainA::Q,
            [
                (-0.0413815050890846, 0.524890659167824),
                (1.61428571428571, 0.524890659167823),
                (2.16995293366051, 0.524890659167824),
            ],
        ),
        (ChainA::MinusQ, [(-6.03484692283496, 0.0), (-3.53484692283495, 0.0), (3.96515307716504, 0.0)]),
        (
            ChainA::QInv,
            [
                (-0.114285714285714, 0.734846922834953),
                (1.31428571428571, 0.734846922834953),
                (3.1, 0.734846922834953),
            ],
        ),
        (ChainA::MinusQInv, [(-7.82244814001051, 0.0), (-6.87423461417478, 0.0), (-3.62602108833904, 0.0)]),
    ];
    let s = GenericSpecialization::default();
    let p = Parameters::<BigRational>::rational(&s).unwrap();
    let r = build_rep(&p, &part("1"), 3, STD).unwrap();
    for (a, values) in pinned {
        let h = hamiltonian(&r, &p, &ChainParams::principal(a, &s), &s).unwrap();
        let ev = eigenvalues_numeric(&h).unwrap();
        assert_eq!(ev.len(), 3);
        for (z, (re, im)) in ev.iter().zip(values) {
            // The oracle values carry 15 significant digits.
            assert!((z - Complex64::new(re, im)).norm() < 1e-12 * re.abs().max(1.0) + 1e-13, "{a}: {z} vs {re}{im:+}i");
        }
    }
}

#[test]
fn spectra_are_gauge_invariant() {
    let s = GenericSpecialization::default();
    let p = Parameters::<BigRational>::rational(&s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for lam in &build_graph(4).levels[4] {
        let r = build_rep(&p, lam, 4, STD).unwrap();
        let d: Vec<BigRational> = (0..r.dim())
            .map(|_| BigRational::new(rng.gen_range(1i64..50).into(), rng.gen_range(1i64..50).into()))
            .collect();
        let g = conjugate_by_diagonal(&r, &d).unwrap();
        for a in ChainA::ALL {
            let chain = ChainParams::principal(a, &s);
            let e1 = eigenvalues_numeric(&hamiltonian(&r, &p, &chain, &s).unwrap()).unwrap();
            let e2 = eigenvalues_numeric(&hamiltonian(&g, &p, &chain, &s).unwrap()).unwrap();
            assert!(same_spectrum(&e1, &e2), "({lam}, 4) a={a}: {e1:?} vs {e2:?}");
        }
    }
}

#[test]
fn bulk_splits_into_sigma_and_kappa_parts() {
    let p = Parameters::<ScalarFraction>::symbolic();
    let r = build_rep(&p, &part("1"), 3, STD).unwrap();
    for a in ChainA::ALL {
        let c = kappa_coefficient(&p, a).unwrap();
        let bulk = bulk_hamiltonian(&r, &p, a).unwrap();
        let d = r.dim();
        let sig = r.sigma.iter().fold(Matrix::zeros(d), |acc, s| acc.add(s));
        let kap = r.kappa.iter().fold(Matrix::zeros(d), |acc, k| acc.add(k));
        assert_eq!(bulk.sub(&kap.scale(&c)), sig);
    }
}

#[test]
fn kappa_free_irreps_give_the_hecke_chain() {
    let p = Parameters::<ScalarFraction>::symbolic();
    for lam in [part("3"), part("2,1"), part("1,1,1")] {
        let r = build_rep(&p, &lam, 3, STD).unwrap();
        assert!(r.kappa_free());
        let d = r.dim();
        let sig = r.sigma.iter().fold(Matrix::zeros(d), |acc, s| acc.add(s));
        for a in ChainA::ALL {
            assert_eq!(bulk_hamiltonian(&r, &p, a).unwrap(), sig);
        }
    }
}

#[test]
fn xi_constraint_can_be_waived() {
    let s = GenericSpecialization::default();
    let p = Parameters::<BigRational>::rational(&s).unwrap();
    let r = build_rep(&p, &part("1"), 3, STD).unwrap();
    let mut chain = ChainParams {
        a: ChainA::Q,
        xi: Complex64::new(0.3, 0.0),
        waive_constraint: false,
    };
    assert!(hamiltonian(&r, &p, &chain, &s).is_err());
    chain.waive_constraint = true;
    let h = hamiltonian(&r, &p, &chain, &s).unwrap();
    assert_eq!(eigenvalues_numeric(&h).unwrap().len(), 3);
}
