use qmc_core::e8::action::{braid_check, involution_check, star_conditions, BraidOutcome};
use qmc_core::e8::sample_system;

#[test]
fn braid_relations_on_one_sample() {
    let sys = sample_system(21).unwrap();
    assert_eq!(star_conditions(&sys).unwrap(), (true, true));
    for i in [1, 2, 4, 5, 6, 7, 8] {
        let out = braid_check(&sys, i).unwrap();
        assert!(out.passed(), "s{i}: {out:?}");
    }
    assert_eq!(braid_check(&sys, 3).unwrap(), BraidOutcome::Unverified);
    assert!(involution_check(&sys).unwrap().passed());
}
