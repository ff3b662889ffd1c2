use gentle_core::classify::{
    build_family, classify, clock_condition, derived_equivalent, family_phi, EquivVerdict,
    NormalForm,
};
use gentle_core::generator::corpus;
use gentle_core::phi::compute_phi;
use gentle_core::repetitive::compute_n;

fn all_families() -> Vec<NormalForm> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push(NormalForm::An { n });
    }
    for p in 1..=11 {
        for q in 1..=p.min(12 - p) {
            out.push(NormalForm::ATilde { p, q });
        }
    }
    for n in 1..=8 {
        for r in 1..=n {
            for m in 0..=4 {
                out.push(NormalForm::Lambda { r, n, m });
            }
        }
    }
    out
}

#[test]
fn classify_inverts_build_family() {
    for form in all_families() {
        let p = build_family(form).unwrap();
        let phi = compute_phi(&p).unwrap().0;
        assert_eq!(Some(phi.clone()), family_phi(form), "{form}");
        assert_eq!(compute_n(&p).unwrap(), phi, "{form}");
        assert_eq!(classify(&p), Ok(form), "{form}");
    }
}

#[test]
fn clock_matches_branch() {
    for form in all_families() {
        let p = build_family(form).unwrap();
        match form {
            NormalForm::ATilde { .. } => assert!(clock_condition(&p).unwrap().balanced()),
            NormalForm::Lambda { r, .. } => {
                assert_eq!(clock_condition(&p).unwrap().difference(), r as usize)
            }
            _ => assert!(clock_condition(&p).is_err()),
        }
    }
}

#[test]
fn atilde_vertex_count() {
    let p = build_family(NormalForm::ATilde { p: 4, q: 2 }).unwrap();
    assert_eq!(p.quiver().vertex_count(), 6);
}

#[test]
fn corpus_classifies_consistently() {
    for p in corpus(120) {
        // Classification asserts agreement between phi and the clock condition.
        let form = classify(&p).unwrap();
        if let Some(phi) = family_phi(form) {
            assert_eq!(compute_phi(&p).unwrap().0, phi, "{}", p.name());
            let rep = build_family(form).unwrap();
            assert!(matches!(
                derived_equivalent(&p, &rep),
                Ok(EquivVerdict::Equivalent { .. })
            ));
        }
    }
}

#[test]
fn verdict_is_reflexive_and_symmetric() {
    let ps = corpus(40);
    for a in &ps {
        assert!(!matches!(
            derived_equivalent(a, a).unwrap(),
            EquivVerdict::NotEquivalent { .. }
        ));
        for b in ps.iter().take(10) {
            let ab = derived_equivalent(a, b).unwrap();
            let ba = derived_equivalent(b, a).unwrap();
            assert_eq!(ab.name(), ba.name());
        }
    }
}
