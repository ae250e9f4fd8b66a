use bmw_core::central::{central_scalars, intertwiner_checks, zhat_series};
use bmw_core::combinatorics::{build_graph, CombinatoricsError, ContentConvention, Partition};
use bmw_core::matrix::Matrix;
use bmw_core::repbuilder::{build_rep, verify_relations, RepError, RepJson, Tower};
use bmw_core::scalars::{BigRational, Field, GenericSpecialization, Parameters, ScalarFraction};
use bmw_core::spectrum::EigenvalueToken;

const STD: ContentConvention = ContentConvention::ColMinusRow;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn sym() -> Parameters<ScalarFraction> {
    Parameters::symbolic()
}

fn rat() -> Parameters<BigRational> {
    Parameters::rational(&GenericSpecialization::default()).unwrap()
}

#[test]
fn one_dimensional_reps_at_two() {
    let p = sym();
    let e = build_rep(&p, &part(""), 2, STD).unwrap();
    assert_eq!(*e.sigma[0].get(0, 0), ScalarFraction::nu());
    // mu from the cubic: (q - nu)(nu + q^-1) / (nu (q - q^-1)).
    let mu = (&(&ScalarFraction::q() - &p.nu) * &(&p.nu + &p.q_inv))
        .checked_div(&(&p.nu * &p.qq))
        .unwrap();
    assert_eq!(*e.kappa[0].get(0, 0), mu);
    assert_eq!(e.y[1][0], &p.nu * &p.nu);

    let r = build_rep(&p, &part("2"), 2, STD).unwrap();
    assert_eq!(*r.sigma[0].get(0, 0), p.q);
    assert!(r.kappa[0].is_zero());
    assert_eq!(r.y[1][0], &p.q * &p.q);

    let c = build_rep(&p, &part("1,1"), 2, STD).unwrap();
    assert_eq!(*c.sigma[0].get(0, 0), p.q_inv.negated());
}

#[test]
fn kappa_moments_in_the_three_dimensional_rep() {
    let p = sym();
    let r = build_rep(&p, &part("1"), 3, STD).unwrap();
    let z = zhat_series(&[EigenvalueToken::ONE], 2, &p).unwrap();
    let k = &r.kappa[1];
    let mut yp = Matrix::identity(r.dim());
    for zp in &z {
        assert_eq!(k.mul(&yp).mul(k), k.scale(zp));
        yp = yp.mul(&r.y_matrix(2));
    }
}

#[test]
fn rational_reps_are_specializations_of_symbolic_ones() {
    let s = GenericSpecialization::default();
    let mut ts = Tower::new(sym(), STD);
    let mut tr = Tower::new(rat(), STD);
    for n in 1..=4 {
        for lam in &build_graph(n).levels[n] {
            let a = ts.rep(lam, n).unwrap();
            let b = tr.rep(lam, n).unwrap();
            for (x, y) in a.sigma.iter().zip(&b.sigma).chain(a.kappa.iter().zip(&b.kappa)) {
                assert_eq!(x.try_map(|v| v.specialize(&s)).unwrap(), *y, "({lam}, {n})");
            }
        }
    }
}

#[test]
fn flipped_content_convention_also_verifies() {
    let conv = ContentConvention::RowMinusCol;
    let mut t = Tower::new(rat(), conv);
    for n in 1..=5 {
        for lam in &build_graph(n).levels[n] {
            t.rep(lam, n).unwrap();
        }
    }
}

#[test]
fn other_generic_points_verify() {
    for (q, nu) in [(3, 5), (5, 2), (-2, 7)] {
        let s = GenericSpecialization::from_integers(q, nu);
        let p = Parameters::<BigRational>::rational(&s).unwrap();
        let mut t = Tower::new(p, STD);
        for lam in &build_graph(5).levels[5] {
            t.rep(lam, 5).unwrap();
        }
    }
}

#[test]
fn hecke_quotient_on_full_diagrams() {
    let p = sym();
    for n in 2..=4 {
        for lam in build_graph(n).levels[n].iter().filter(|l| l.size() == n) {
            let r = build_rep(&p, lam, n, STD).unwrap();
            assert!(r.kappa_free());
            for s in &r.sigma {
                let d = r.dim();
                let lhs = s
                    .sub(&Matrix::scalar(d, p.q.clone()))
                    .mul(&s.add(&Matrix::scalar(d, p.q_inv.clone())));
                assert!(lhs.is_zero());
            }
        }
    }
}

#[test]
fn non_vertices_are_rejected() {
    let err = build_rep(&sym(), &part("2"), 3, STD).unwrap_err();
    assert!(matches!(err, RepError::Combinatorics(CombinatoricsError::NotAVertex { .. })));
}

#[test]
fn central_elements_and_intertwiners_at_four() {
    let p = sym();
    let mut t = Tower::new(p.clone(), STD);
    for lam in &build_graph(4).levels[4] {
        let r = t.rep(lam, 4).unwrap();
        let c = central_scalars(&r, &p, 3).unwrap();
        assert_eq!(c.power_sums.len(), 3);
        for k in 1..4 {
            let rep = intertwiner_checks(&r, &p, k);
            assert!(rep.passed(), "({lam}, 4) k={k}: {:?}", rep.failures);
        }
    }
}

#[test]
fn json_export_round_trips() {
    let r = build_rep(&sym(), &part("1"), 3, STD).unwrap();
    let j = RepJson::from_rep(&r);
    let text = serde_json::to_string(&j).unwrap();
    let back: RepJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.paths.len(), 3);
    for (m, rows) in r.sigma.iter().zip(&back.sigma) {
        for (i, row) in rows.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                assert_eq!(s.parse::<ScalarFraction>().unwrap(), *m.get(i, k));
            }
        }
    }
}

#[test]
fn tampered_rep_fails_verification() {
    let p = rat();
    let mut r = build_rep(&p, &part("1"), 3, STD).unwrap();
    let v = r.sigma[1].get(0, 1).times(&BigRational::from_integer(2.into()));
    r.sigma[1].set(0, 1, v);
    let report = verify_relations(&r, &p);
    assert!(!report.passed());
    assert!(report.failures.iter().any(|f| f.relation == "braid"));
}
