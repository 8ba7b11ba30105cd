use permgrowth::verify::{run_battery, VerifyProfile};

#[test]
fn battery_passes_on_registered_data() {
    let outcomes = run_battery(&VerifyProfile::default());
    assert_eq!(outcomes.len(), 12);
    for o in &outcomes {
        assert!(o.passed, "check {} ({}) failed: measured {} expected {}", o.id, o.name, o.measured, o.expected);
    }
}

#[test]
fn corrupted_problem_is_caught() {
    let profile = VerifyProfile {
        corrupt: Some("prop34".into()),
        realization_samples: 4,
        ..VerifyProfile::default()
    };
    let outcomes = run_battery(&profile);
    assert!(outcomes.iter().any(|o| !o.passed));
}
