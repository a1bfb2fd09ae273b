use davenport::arith::{FnId, FnTable};
use davenport::identities::{
    asymptotic_probe, cross_check_popov_thm11, verify_eq34, verify_lemma31, verify_lemma32, verify_popov,
    verify_theorem11, verify_theorem12, verify_theorem31, AsymptoticModel, DeltaKind, IdentityId, SignConvention,
    VerifyConfig, Workspace,
};
use davenport::quad::Phi;
use davenport::zeta::ZeroTable;
use davenport::{Error, Rational};

const LIMIT: u64 = 200_000;

fn ws() -> Workspace<f64> {
    Workspace::new(LIMIT).unwrap().with_zeros(ZeroTable::bundled())
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

#[test]
fn popov_preconditions() {
    let cfg = VerifyConfig::new(1_000);
    let empty = Workspace::<f64>::new(1_000).unwrap().with_zeros(ZeroTable::from_ordinates(vec![], "empty").unwrap());
    assert!(matches!(verify_popov(&empty, r(2, 1), &cfg), Err(Error::Domain(_))));
    assert!(matches!(cross_check_popov_thm11(&empty, r(2, 1), &cfg), Err(Error::Domain(_))));
    let no_zeros = Workspace::<f64>::new(1_000).unwrap();
    assert!(verify_popov(&no_zeros, r(2, 1), &cfg).is_err());
    assert!(matches!(verify_popov(&ws(), r(3, 2), &cfg), Err(Error::Domain(_))));
}

#[test]
fn popov_and_cross_check_share_the_series() {
    let w = ws();
    let cfg = VerifyConfig::new(LIMIT);
    for x in [2, 5, 10] {
        let p = verify_popov(&w, Rational::integer(x), &cfg).unwrap();
        let c = cross_check_popov_thm11(&w, Rational::integer(x), &cfg).unwrap();
        let half = p.components["thm11_lhs"];
        assert_eq!(p.lhs, 2.0 * half);
        assert_eq!(c.components["thm11_lhs"], half);
        assert_eq!(c.rhs, 0.5 * p.rhs);
        assert!(p.bound_is_heuristic && c.bound_is_heuristic);
        assert_eq!(p.identity, IdentityId::Popov);
    }
}

#[test]
fn theorem11_sign_conventions() {
    let w = ws();
    let cfg = VerifyConfig::new(LIMIT);
    let rep = verify_theorem11(&w, FnId::VonMangoldt, r(5, 2), &cfg).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(!rep.bound_is_heuristic);
    assert_eq!(rep.components["literal_rhs"], -rep.rhs);
    let mut literal = cfg;
    literal.sign = SignConvention::Literal;
    let lit = verify_theorem11(&w, FnId::VonMangoldt, r(5, 2), &literal).unwrap();
    assert!(!lit.pass);
    assert!((lit.residual - 2.0 * lit.lhs.abs()).abs() < 1e-5);
    assert!(matches!(verify_theorem11(&w, FnId::Moebius, r(1, 1), &cfg), Err(Error::Domain(_))));
}

#[test]
fn zero_table_identities() {
    let zero = FnTable::from_values(FnId::Custom, vec![0.0; 1_000], true).unwrap();
    let w = Workspace::new(1_000).unwrap().with_custom(zero).unwrap();
    let cfg = VerifyConfig::new(1_000);
    let rep = verify_theorem11(&w, FnId::Custom, r(5, 2), &cfg).unwrap();
    assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
    assert!(rep.pass);
}

#[test]
fn theorem12_integer_collapse_and_domain() {
    let w = ws();
    let cfg = VerifyConfig::new(LIMIT);
    for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
        let rep = verify_theorem12(&w, f, r(7, 1), &cfg).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.residual), (0.0, 0.0, 0.0));
        assert!(rep.pass);
    }
    assert!(matches!(verify_theorem12(&w, FnId::Moebius, r(0, 1), &cfg), Err(Error::Domain(_))));
    assert!(verify_theorem12(&w, FnId::Moebius, r(1, 3), &cfg).unwrap().pass);
}

#[test]
fn theorem31_half_integer_and_structure() {
    let w = ws();
    let cfg = VerifyConfig::new(LIMIT);
    let rep = verify_theorem31(&w, FnId::Liouville, r(1, 2), &cfg).unwrap();
    assert_eq!(rep.rhs, 0.0);
    assert!(rep.components["structural_rel_diff"] <= 1e-12);
    let mu = verify_theorem31(&w, FnId::Moebius, r(3, 10), &cfg).unwrap();
    let target = -(0.6 * std::f64::consts::PI).sin() / std::f64::consts::PI;
    assert!((mu.rhs - target).abs() < 1e-15);
    assert!((mu.lhs - target).abs() < 1e-2);
}

#[test]
fn quadrature_wrappers() {
    let cfg = VerifyConfig::new(1);
    let l = verify_lemma31(3, 3, &cfg).unwrap();
    assert!((l.lhs - 0.125).abs() < 1e-12 && l.rhs == 0.125 && l.pass);
    let e = verify_eq34(3, 5, &cfg).unwrap();
    assert!(e.rhs == 0.0 && e.lhs.abs() < 1e-12 && e.pass);
    let e = verify_eq34(3, 6, &cfg).unwrap();
    assert!((e.rhs + 3.0 / (4.0 * std::f64::consts::PI * 6.0)).abs() < 1e-16 && e.pass);
    let em = verify_lemma32(Phi::Square, 0.0, 3.0, &cfg).unwrap();
    assert!(em.residual <= 1e-12 && em.lhs == 14.0);
    assert!(verify_lemma31(0, 1, &cfg).is_err());
    assert!(verify_eq34(1, 0, &cfg).is_err());
}

#[test]
fn doubling_refinement() {
    let w = ws();
    for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
        for x in [r(2, 1), r(5, 2), r(7, 3)] {
            let a = verify_theorem11(&w, f, x, &VerifyConfig::new(LIMIT / 2)).unwrap();
            let b = verify_theorem11(&w, f, x, &VerifyConfig::new(LIMIT)).unwrap();
            assert!(b.residual <= a.residual + a.bound, "{f} {x}");
            let a = verify_theorem12(&w, f, x, &VerifyConfig::new(LIMIT / 2)).unwrap();
            let b = verify_theorem12(&w, f, x, &VerifyConfig::new(LIMIT)).unwrap();
            assert!(b.residual <= a.residual + a.bound, "{f} {x}");
            assert!(a.residual <= a.bound.max(1e-14), "{f} {x}");
        }
    }
}

#[test]
fn probe_rows() {
    let w = ws();
    assert!(asymptotic_probe(&w, AsymptoticModel::von_mangoldt(), &[], LIMIT).unwrap().is_empty());
    let rows = asymptotic_probe(&w, AsymptoticModel::von_mangoldt(), &[Rational::integer(100)], LIMIT).unwrap();
    let row = &rows[0];
    assert_eq!(row.x, "100");
    assert!((row.ratio - row.d * 100.0).abs() < 1e-12 * row.ratio.abs().max(1.0));
    assert!((row.log_comparison - row.d * 200.0 / 100f64.ln()).abs() < 1e-12);
    let model = AsymptoticModel { delta_kind: DeltaKind::Constant, fn_id: FnId::Moebius };
    let rows = asymptotic_probe(&w, model, &[Rational::integer(100)], LIMIT).unwrap();
    assert!((rows[0].ratio - rows[0].d * 1e4).abs() < 1e-9);
}

#[test]
fn reports_serialize_and_flatten() {
    let rep = verify_lemma31(2, 3, &VerifyConfig::new(1)).unwrap();
    let json: serde_json::Value = serde_json::to_value(&rep).unwrap();
    for key in ["identity", "params", "lhs", "rhs", "residual", "bound", "bound_is_heuristic", "pass"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["identity"], "lemma31");
    assert_eq!(rep.csv_row().len(), davenport::identities::IdentityReport::CSV_HEADER.len());
}
