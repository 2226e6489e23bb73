//! The bundled examples with their expected outcomes.

use equm::auditor::{audit, check, lexicographic_compare, lexicographic_solve};
use equm::criteria::{maximin_compare_oracle, maximin_mixture, maximin_utilities, MaximinSpec};
use equm::formats::parse_model;
use equm::pref::{check_property_p, prefers};
use equm::{fixtures, Postulate, PrefOrdering, Regime};
use num_rational::BigRational;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn compares(text: &str, cases: &[(&str, &str, PrefOrdering)]) -> Result<(), String> {
    let doc = parse_model(text).map_err(s)?;
    for (a, b, want) in cases {
        let got = doc.compare(a, b).map_err(s)?;
        ensure(got == *want, || format!("{a} vs {b}: {got}, expected {want}"))?;
    }
    Ok(())
}

fn dice() -> Check {
    use PrefOrdering::*;
    compares(
        fixtures::DICE,
        &[("b6", "b4", Indifferent), ("e6", "b6", Indifferent), ("e", "f", Better)],
    )?;
    let doc = parse_model(fixtures::DICE).map_err(s)?;
    let (e, f) = (doc.value("e").map_err(s)?, doc.value("f").map_err(s)?);
    ensure(e.to_string() == "eps" && f.to_string() == "1/12*eps", || format!("e = {e}, f = {f}"))?;
    Ok("b6 ~ b4, e6 ~ b6, e > f".into())
}

fn consolation() -> Check {
    use PrefOrdering::*;
    for p in ["1/4", "1/2", "3/4"] {
        let text = fixtures::CONSOLATION.replace("weight = \"1/2\"", &format!("weight = \"{p}\""));
        compares(
            &text,
            &[
                ("two", "one", Indifferent),
                ("one", "three", Indifferent),
                ("two", "three", Indifferent),
                ("magazine", "nothing", Better),
            ],
        )
        .map_err(|m| format!("p = {p}: {m}"))?;
    }
    Ok("one ~ two ~ three, magazine > nothing".into())
}

fn surgery() -> Check {
    for mu in ["1/1000", "1/100", "1/2", "999/1000"] {
        let text = fixtures::SURGERY.replace("weight = \"1/100\"", &format!("weight = \"{mu}\""));
        compares(&text, &[("q", "p", PrefOrdering::Better)]).map_err(|m| format!("mu = {mu}: {m}"))?;
    }
    let doc = parse_model(fixtures::SURGERY).map_err(s)?;
    let get = |id| doc.lottery(id).map_err(s);
    let rep = check_property_p(&get("p")?, &get("l")?, &get("d")?, &doc.utilities, doc.regime)
        .map_err(s)?;
    ensure(!rep.holds() && rep.indifference.is_empty(), || format!("{rep:?}"))?;
    Ok("surgery preferred at every weight, property P fails".into())
}

fn maximin() -> Check {
    let spec = MaximinSpec::new(3).map_err(s)?;
    let u = maximin_utilities(spec);
    let ws: Vec<BigRational> = (1..8).map(|k| BigRational::new(k.into(), 8.into())).collect();
    let mut items = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for w in &ws {
                items.push((i, w, j, maximin_mixture(spec, i, w, j).map_err(s)?));
            }
        }
    }
    for (i, w, j, a) in &items {
        for (i2, w2, j2, b) in &items {
            let got = prefers(a, b, &u, Regime::NsUtil).map_err(s)?;
            let want = maximin_compare_oracle((*i, w, *j), (*i2, w2, *j2)).map_err(s)?;
            ensure(got == want, || format!("({i},{w},{j}) vs ({i2},{w2},{j2})"))?;
        }
    }
    let doc = parse_model(fixtures::MAXIMIN).map_err(s)?;
    let st = doc.structure().map_err(s)?;
    let v = check(&st, Postulate::A2).map_err(s)?;
    let cert = v.certificate().ok_or("A2 holds")?;
    ensure(cert.replay(&st).map_err(s)?, || "certificate does not replay".into())?;
    Ok("agrees with worst-outcome order, A2 fails with a replayable certificate".into())
}

fn lexicographic() -> Check {
    let pair = |a: i64, b: i64| (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
    let (p, q, r) = (pair(2, 0), pair(1, 10), pair(0, 0));
    ensure(
        lexicographic_compare(&p, &q) == PrefOrdering::Better
            && lexicographic_compare(&q, &r) == PrefOrdering::Better,
        || "order".into(),
    )?;
    let gamma = lexicographic_solve(&p, &r, &q, PrefOrdering::Indifferent).map_err(s)?;
    ensure(gamma.is_empty(), || format!("gamma set {gamma}"))?;
    Ok("no weight makes the mixture indifferent".into())
}

fn audits() -> Check {
    for (name, text) in fixtures::ALL {
        let doc = parse_model(text).map_err(s)?;
        let report = audit(&doc.structure().map_err(s)?, &doc.postulates()).map_err(s)?;
        let expect_hold = name != "maximin";
        ensure(report.all_hold() == expect_hold, || {
            format!("{name}: all hold = {}", report.all_hold())
        })?;
    }
    Ok("all fixtures audit as expected".into())
}

pub fn run() -> Vec<(&'static str, Check)> {
    vec![
        ("dice", dice()),
        ("consolation", consolation()),
        ("surgery", surgery()),
        ("maximin", maximin()),
        ("lexicographic", lexicographic()),
        ("audits", audits()),
    ]
}
