use num_traits::{One, Zero};
use qmc_core::e8::{build_system, sample_system, solved_entries};
use qmc_core::scalarred::{
    apparent_check, autonomize, f_closed_form, f_closed_form_for, point_configuration, qfuchs_check, reduce_to_scalar,
    tune_for_autonomization, CharRoot, FormulaVariant, PointConfiguration, TuneVariable,
};
use qmc_core::{RatPoly, Rational};

fn simple_roots(roots: &[CharRoot]) -> Vec<Rational> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.root.clone(), r.multiplicity))
        .collect()
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

#[test]
fn configuration_of_the_reduction() {
    for seed in 0..4 {
        let sys = sample_system(seed).unwrap();
        let p = &sys.params;
        let q = &p.q;
        let red = reduce_to_scalar(&sys).unwrap();
        let cfg = point_configuration(&red.op, q).unwrap();

        let depth_of = |roots: &[CharRoot], r: &Rational| roots.iter().find(|c| &c.root == r).map(|c| c.depth);
        let one = Rational::one();
        assert_eq!(sorted(simple_roots(&cfg.x0)), sorted(vec![one.clone(), q.clone(), q * q]));
        assert_eq!(depth_of(&cfg.x0, &one), Some(3));
        assert_eq!(depth_of(&cfg.x0, q), Some(2));

        let b = p.head_product();
        assert_eq!(sorted(simple_roots(&cfg.x_inf)), sorted(vec![b.clone(), &b / q, &b / (q * q)]));
        assert_eq!(depth_of(&cfg.x_inf, &b), Some(3));

        let mut t0: Vec<Rational> = p.e[3..7].iter().map(|e| -e.clone()).collect();
        t0.extend(p.e[7..9].iter().map(|e| -(e / q)));
        t0.push(&red.f / q);
        assert_eq!(sorted(simple_roots(&cfg.t0)), sorted(t0));

        let mut tinf = vec![red.f.clone()];
        for e in &p.e[..3] {
            tinf.push(-(e / q));
            tinf.push(-(e / (q * q)));
            assert_eq!(depth_of(&cfg.t_inf, &-(e / q)), Some(2));
        }
        assert_eq!(sorted(simple_roots(&cfg.t_inf)), sorted(tinf));

        assert_eq!(PointConfiguration::total(&cfg.t0), 7);
        assert_eq!(PointConfiguration::total(&cfg.t_inf), 7);
        assert!(qfuchs_check(&cfg));
        let text = cfg.to_string();
        for label in ["x=0", "x=∞", "T_x=0", "T_x=∞"] {
            assert!(text.lines().any(|l| l.starts_with(label)));
        }
    }
}

#[test]
fn x0_slice_factorizes() {
    let sys = sample_system(8).unwrap();
    let q = sys.params.q.clone();
    let red = reduce_to_scalar(&sys).unwrap();
    let l0 = red.op.x_slice(0);
    let d0 = RatPoly::from_roots(&[Rational::one(), q.clone(), &q * &q]);
    let (quo, rem) = l0.div_rem(&d0);
    assert!(rem.is_zero() && quo.is_constant());
}

#[test]
fn closed_form_matches_the_root() {
    for seed in 0..6 {
        let sys = sample_system(seed).unwrap();
        let f = reduce_to_scalar(&sys).unwrap().f;
        assert_eq!(f_closed_form_for(&sys, FormulaVariant::Corrected).unwrap(), f);
    }
}

#[test]
fn printed_closed_form_disagrees() {
    let sys = sample_system(0).unwrap();
    let f = reduce_to_scalar(&sys).unwrap().f;
    assert_ne!(f_closed_form_for(&sys, FormulaVariant::AsPrinted).unwrap(), f);
}

#[test]
fn closed_form_under_diagonal_gauge() {
    let sys = sample_system(9).unwrap();
    let a = solved_entries(&sys.params, sys.accessory.as_ref().unwrap()).unwrap();
    let d = [Rational::one(), Rational::new(2.into(), 3.into()), Rational::new((-5).into(), 2.into())];
    // D⁻¹ X D on the triangular factors.
    let scaled = [
        &a[0] * &d[1] / &d[0],
        &a[1] * &d[2] / &d[0],
        &a[2] * &d[2] / &d[1],
        &a[3] * &d[0] / &d[1],
        &a[4] * &d[0] / &d[2],
        &a[5] * &d[1] / &d[2],
    ];
    let v = FormulaVariant::Corrected;
    assert_eq!(
        f_closed_form(&sys.params, &a, v).unwrap(),
        f_closed_form(&sys.params, &scaled, v).unwrap()
    );
    let acc = [scaled[2].clone(), scaled[3].clone(), scaled[4].clone(), scaled[5].clone()];
    let rebuilt = build_system(&sys.params, &acc).unwrap();
    assert_eq!(reduce_to_scalar(&rebuilt).unwrap().f, reduce_to_scalar(&sys).unwrap().f);
}

#[test]
fn autonomous_specialization() {
    let sys = sample_system(1).unwrap();
    let acc = sys.accessory.clone().unwrap();
    let generic = reduce_to_scalar(&sys).unwrap();
    let control = autonomize(&generic.op, &sys.params);
    assert!(control.remainders[0].is_zero() && !control.remainders[3].is_zero());

    let tuned = tune_for_autonomization(&sys.params, &acc, TuneVariable::Q).unwrap();
    let p = &tuned.system.params;
    let red = reduce_to_scalar(&tuned.system).unwrap();
    assert_eq!(red.f, -p.e[6].clone());
    let bd = autonomize(&red.op, p);
    assert_eq!(bd.t_degree, 3);
    // The outer coefficients acquire the factor x + e₇.
    assert!(bd.remainders[0].is_zero() && bd.remainders[3].is_zero());
    // The apparent relation ties P₂(−e₇) to P₃(−e₇/q), which is nonzero.
    let c = apparent_check(&red.op, &red.f, &p.q).unwrap();
    let m7 = -p.e[6].clone();
    assert_eq!(red.op.p[3].eval(&(&m7 / &p.q)), &c * red.op.p[2].eval(&m7));
    assert!(!red.op.p[2].eval(&m7).is_zero());
    assert!(!bd.divisible());
}
