mod common;

use common::n;
use equm::auditor::{audit, check, Certificate};
use equm::fixtures;
use equm::formats::{parse_lottery, parse_model, parse_model_as, render_report, OutputMode};
use equm::pref::{check_property_p, prefers, Regime};
use equm::{Error, Postulate, PrefOrdering};

#[test]
fn every_fixture_parses() {
    for (name, text) in fixtures::ALL {
        let doc = parse_model(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        doc.structure().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn dice_states_keep_document_order() {
    let doc = parse_model(fixtures::DICE).unwrap();
    let model = doc.model.unwrap();
    let ids = model.states.ids();
    assert_eq!(ids.len(), 18);
    assert_eq!(ids[0], "face1");
    assert_eq!(ids[5], "face6");
    assert_eq!(ids[6], "edge12");
    assert_eq!(doc.acts.keys().collect::<Vec<_>>(), ["b6", "b4", "e6", "e", "f"]);
}

#[test]
fn dice_values() {
    let doc = parse_model(fixtures::DICE).unwrap();
    assert_eq!(doc.value("b6").unwrap(), n("1/6 - 1/6*eps"));
    assert_eq!(doc.value("e6").unwrap(), n("1/6 + 5/6*eps"));
    assert_eq!(doc.compare("f", "e").unwrap(), PrefOrdering::Worse);
    assert_eq!(doc.compare("f", "lose").unwrap(), PrefOrdering::Better);
    assert_eq!(doc.value("nope"), Err(Error::UnknownId("nope".into())));
}

#[test]
fn dice_audit_holds() {
    let doc = parse_model(fixtures::DICE).unwrap();
    let report = audit(&doc.structure().unwrap(), &doc.postulates()).unwrap();
    assert_eq!(
        report.entries.iter().map(|(p, _)| *p).collect::<Vec<_>>(),
        [Postulate::A1, Postulate::A4]
    );
    assert!(report.all_hold(), "{report:?}");
}

#[test]
fn consolation_defaults() {
    let doc = parse_model(fixtures::CONSOLATION).unwrap();
    assert_eq!(doc.value("two").unwrap().to_string(), "1/2 + 1/2*eps");
    let report = audit(&doc.structure().unwrap(), &doc.postulates()).unwrap();
    assert!(report.all_hold());
    // the same model read with standard probabilities and utilities is rejected
    assert!(matches!(
        parse_model_as(fixtures::CONSOLATION, Some(Regime::Std)),
        Err(Error::RegimeViolation { path, literal, .. }) if path == "outcomes.magazine" && literal == "eps"
    ));
}

#[test]
fn surgery_property_p() {
    let doc = parse_model(fixtures::SURGERY).unwrap();
    assert_eq!(doc.compare("q", "p").unwrap(), PrefOrdering::Better);
    let (p, l, d) = (
        doc.lottery("p").unwrap(),
        doc.lottery("l").unwrap(),
        doc.lottery("d").unwrap(),
    );
    let rep = check_property_p(&p, &l, &d, &doc.utilities, doc.regime).unwrap();
    assert!(rep.indifference.is_empty());
    assert!(rep.better.is_full());
}

#[test]
fn maximin_certificate_replays_from_text() {
    let doc = parse_model(fixtures::MAXIMIN).unwrap();
    let s = doc.structure().unwrap();
    let report = audit(&s, &doc.postulates()).unwrap();
    assert!(report.verdict(Postulate::A1).unwrap().holds());
    let cert = report.verdict(Postulate::A2).unwrap().certificate().unwrap().clone();
    let Certificate::Independence { p, q, r, lambda, observed, .. } = &cert else {
        panic!("{cert:?}");
    };
    assert!(cert.replay(&s).unwrap());
    // everything the machine report prints is enough to re-evaluate it
    let text = render_report(&report, OutputMode::Machine);
    let line = text.lines().find(|l| l.starts_with("VERDICT A2 FAIL")).unwrap();
    for (key, lot) in [("p", p), ("q", q), ("r", r)] {
        let start = line.find(&format!(" {key}=\"")).unwrap() + key.len() + 3;
        let end = start + line[start..].find('"').unwrap();
        assert_eq!(parse_lottery(&line[start..end]).unwrap(), *lot);
    }
    assert!(line.contains(&format!("lambda={lambda}")));
    assert!(line.contains(&format!("observed={}", observed.name())));
    let lhs = equm::mix(lambda, p, r, s.regime).unwrap();
    let rhs = equm::mix(lambda, q, r, s.regime).unwrap();
    assert_ne!(prefers(&lhs, &rhs, &s.utilities, s.regime).unwrap(), PrefOrdering::Better);
}

#[test]
fn reports_are_byte_identical() {
    for (name, text) in fixtures::ALL {
        let doc = parse_model(text).unwrap();
        let s = doc.structure().unwrap();
        let a = render_report(&audit(&s, &doc.postulates()).unwrap(), OutputMode::Machine);
        let b = render_report(&audit(&s, &doc.postulates()).unwrap(), OutputMode::Machine);
        assert_eq!(a, b, "{name}");
        let h = render_report(&audit(&s, &doc.postulates()).unwrap(), OutputMode::Human);
        assert!(!h.is_empty());
    }
}

#[test]
fn standard_fixture_witness() {
    let doc = parse_model(fixtures::STANDARD).unwrap();
    let s = doc.structure().unwrap();
    let report = audit(&s, &doc.postulates()).unwrap();
    assert!(report.all_hold());
    assert!(check(&s, Postulate::Gamma).unwrap().holds());
    let set = equm::auditor::solver::solve_mixture_relation(
        &doc.value("a").unwrap(),
        &doc.value("c").unwrap(),
        &doc.value("b").unwrap(),
        equm::QOrdering::Equivalent,
        doc.regime,
    )
    .unwrap();
    assert_eq!(set.to_string(), "{1/2}");
    assert_eq!(doc.compare("half", "b").unwrap(), PrefOrdering::Indifferent);
}

#[test]
fn lottery_literals() {
    let l = parse_lottery("{a: 1/2 - eps, b: 1/2 + eps}").unwrap();
    assert_eq!(l.to_string(), "{a: 1/2 - eps, b: 1/2 + eps}");
    assert_eq!(parse_lottery(&l.to_string()).unwrap(), l);
    assert!(parse_lottery("{}").is_err());
    assert!(matches!(parse_lottery("{a: 1/0}"), Err(Error::ZeroDenominator { pos: 6 })));
    assert!(matches!(parse_lottery("a: 1"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_lottery("{a 1}"), Err(Error::Syntax { .. })));
}
