//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons.

mod common;

use std::process::ExitCode;

use common::*;
use equm::acts::is_null;
use equm::auditor::{audit, check, lexicographic_compare, lexicographic_mix, lexicographic_solve};
use equm::criteria::{maximin_compare_oracle, maximin_mixture, maximin_utilities, MaximinSpec};
use equm::fixtures;
use equm::formats::{parse_model, parse_nsreal, render_nsreal};
use equm::pref::{
    case1_functional, check_property_p, is_negligible, mix, prefers, Lottery, PropertyPFailure, Regime, UtilityAssignment,
};
use equm::{act_prefers, NsReal, Postulate, PrefOrdering, PrefStructure, QOrdering, Verdict};
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn dice() -> Outcome {
    let doc = parse_model(fixtures::DICE).map_err(e)?;
    let model = doc.model.as_ref().ok_or("no states")?;
    let faces = model.belief.iter().filter(|(_, p)| **p == n("1/6 - 1/6*eps")).count();
    let edges = model.belief.iter().filter(|(_, p)| **p == n("1/12*eps")).count();
    ensure(faces == 6 && edges == 12, || format!("{faces} faces, {edges} edges"))?;
    for (a, b, want) in [
        ("b6", "b4", PrefOrdering::Indifferent),
        ("e6", "b6", PrefOrdering::Indifferent),
        ("e", "f", PrefOrdering::Better),
    ] {
        let got = doc.compare(a, b).map_err(e)?;
        ensure(got == want, || format!("{a} vs {b}: {got}"))?;
    }
    let ve = doc.value("e").map_err(e)?.to_string();
    let vf = doc.value("f").map_err(e)?.to_string();
    ensure(ve == "eps" && vf == "1/12*eps", || format!("e = {ve}, f = {vf}"))?;
    Ok(format!("u(e) = {ve}, u(f) = {vf}"))
}

fn consolation() -> Outcome {
    for p in ["1/4", "1/2", "3/4"] {
        let text = fixtures::CONSOLATION.replace("weight = \"1/2\"", &format!("weight = \"{p}\""));
        let doc = parse_model(&text).map_err(e)?;
        let ids = ["one", "two", "three"];
        for a in ids {
            for b in ids {
                let got = doc.compare(a, b).map_err(e)?;
                ensure(got == PrefOrdering::Indifferent, || format!("p = {p}: {a} vs {b}: {got}"))?;
            }
        }
        let m = doc.compare("magazine", "nothing").map_err(e)?;
        ensure(m == PrefOrdering::Better, || format!("magazine vs nothing: {m}"))?;
        // transitivity of ∼ over the three lotteries
        let ind = |a, b| doc.compare(a, b).map(|o| o == PrefOrdering::Indifferent);
        for a in ids {
            for b in ids {
                for c in ids {
                    if ind(a, b).map_err(e)? && ind(b, c).map_err(e)? {
                        ensure(ind(a, c).map_err(e)?, || format!("{a} ~ {b} ~ {c}"))?;
                    }
                }
            }
        }
        let v = doc.value("two").map_err(e)?;
        let want = parse_nsreal(p).map_err(e)?;
        ensure(v.qcompare(&want) == QOrdering::Equivalent, || format!("u(two) = {v}"))?;
    }
    Ok("one ~ two ~ three at p = 1/4, 1/2, 3/4".into())
}

fn surgery() -> Outcome {
    for mu in ["1/1000", "1/100", "1/2", "999/1000"] {
        let text = fixtures::SURGERY.replace("weight = \"1/100\"", &format!("weight = \"{mu}\""));
        let doc = parse_model(&text).map_err(e)?;
        let got = doc.compare("q", "p").map_err(e)?;
        ensure(got == PrefOrdering::Better, || format!("mu = {mu}: {got}"))?;
    }
    let doc = parse_model(fixtures::SURGERY).map_err(e)?;
    let (p, l, d) = (
        doc.lottery("p").map_err(e)?,
        doc.lottery("l").map_err(e)?,
        doc.lottery("d").map_err(e)?,
    );
    let report = check_property_p(&p, &l, &d, &doc.utilities, doc.regime).map_err(e)?;
    ensure(!report.holds(), || "property P holds".into())?;
    ensure(report.indifference.is_empty(), || {
        format!("indifference set {}", report.indifference)
    })?;
    ensure(
        report.failure
            == Some(PropertyPFailure::NoIndifference {
                mixtures: Some(PrefOrdering::Better),
            }),
        || format!("{:?}", report.failure),
    )?;
    Ok(format!("indifference set {}, mixture always better", report.indifference))
}

fn maximin() -> Outcome {
    let weights: Vec<BigRational> = (1..8).map(|k| r(k, 8)).collect();
    let mut compared = 0usize;
    for size in 2..=5 {
        let spec = MaximinSpec::new(size).map_err(e)?;
        let u = maximin_utilities(spec);
        let mut items = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                for w in &weights {
                    let l = maximin_mixture(spec, i, w, j).map_err(e)?;
                    items.push((i, w, j, l));
                }
            }
        }
        for (i, w, j, a) in &items {
            for (i2, w2, j2, b) in &items {
                let got = prefers(a, b, &u, Regime::NsUtil).map_err(e)?;
                let want = maximin_compare_oracle((*i, w, *j), (*i2, w2, *j2)).map_err(e)?;
                ensure(got == want, || {
                    format!("n = {size}: ({i}, {w}, {j}) vs ({i2}, {w2}, {j2}): {got} != {want}")
                })?;
                compared += 1;
            }
        }
    }
    let doc = parse_model(fixtures::MAXIMIN).map_err(e)?;
    let s = doc.structure().map_err(e)?;
    let v = check(&s, Postulate::A2).map_err(e)?;
    let cert = v.certificate().ok_or("A2 holds on the maximin model")?;
    ensure(cert.replay(&s).map_err(e)?, || "certificate does not replay".into())?;
    Ok(format!("{compared} comparisons agree, A2 certificate replays"))
}

fn holds_all(s: &PrefStructure, ps: &[Postulate]) -> Result<(), String> {
    let report = audit(s, ps).map_err(e)?;
    for (p, v) in &report.entries {
        ensure(v.holds(), || format!("{p} fails: {:?}", v.certificate()))?;
    }
    Ok(())
}

fn soundness() -> Outcome {
    use Postulate::*;
    let mut g = rng(5);
    for _ in 0..100 {
        let s = rand_structure(&mut g, Regime::Std);
        holds_all(&s, &[A1, A2, A3, Gamma]).map_err(|m| format!("std: {m}"))?;
    }
    let mut implication_cases = 0;
    for _ in 0..100 {
        let s = rand_structure(&mut g, Regime::NsUtil);
        let report = audit(&s, &[A1, A2Prime, A3Prime, A3DoublePrime, A2, A3]).map_err(e)?;
        let holds = |p| report.verdict(p).is_some_and(|v| v.holds());
        for p in [A1, A2Prime, A3Prime, A3DoublePrime] {
            ensure(holds(p), || format!("ns-util: {p} fails: {:?}", report.verdict(p)))?;
        }
        if holds(A2) && holds(A3Prime) && holds(A3DoublePrime) {
            implication_cases += 1;
            ensure(holds(A3), || "A2, A'3, A''3 hold but A3 fails".into())?;
        }
    }
    ensure(implication_cases > 0, || "no structure satisfies A2, A'3 and A''3".into())?;
    Ok(format!("200 structures, implication exercised on {implication_cases}"))
}

fn lexicographic() -> Outcome {
    let (p, q, rr) = ((r(2, 1), r(0, 1)), (r(1, 1), r(10, 1)), (r(0, 1), r(0, 1)));
    ensure(
        lexicographic_compare(&rr, &q) == PrefOrdering::Worse
            && lexicographic_compare(&q, &p) == PrefOrdering::Worse,
        || "order".into(),
    )?;
    let mixed = lexicographic_mix(&r(2, 5), &p, &rr);
    ensure(mixed == (r(4, 5), r(0, 1)), || format!("{mixed:?}"))?;
    ensure(lexicographic_compare(&q, &mixed) == PrefOrdering::Better, || "antecedent".into())?;
    let gamma = lexicographic_solve(&p, &rr, &q, PrefOrdering::Indifferent).map_err(e)?;
    ensure(gamma.is_empty(), || format!("gamma set {gamma}"))?;
    // the qualitative counterpart of the same triple has a γ
    let u = UtilityAssignment::from_pairs([("p", n("2")), ("q", n("1 + 10*eps")), ("r", n("0"))])
        .map_err(e)?;
    let gens = ["p", "q", "r"].map(Lottery::degenerate).to_vec();
    let s = PrefStructure::new(Regime::NsUtil, u, gens).map_err(e)?.with_depth(0);
    let v = check(&s, Postulate::Gamma).map_err(e)?;
    let witness = match &v {
        Verdict::Holds { witness: Some(w), .. } => w.weights.to_string(),
        _ => return Err(format!("gamma in ns-util: {v:?}")),
    };
    Ok(format!("lexicographic gamma set empty, qualitative gamma set {witness}"))
}

fn case1() -> Outcome {
    let mut g = rng(7);
    for _ in 0..100 {
        let s = rand_structure(&mut g, Regime::NsProb);
        let closure = equm::auditor::mixture_closure(&s, 1);
        let u = &s.utilities;
        for _ in 0..10 {
            let p = &closure[g.random_range(0..closure.len())];
            let q = &closure[g.random_range(0..closure.len())];
            let lambda = match g.random_range(0..3) {
                0 => NsReal::ratio(g.random_range(1..8), 8),
                1 => NsReal::ratio(g.random_range(1..8), 8) + NsReal::eps(),
                _ => NsReal::eps(),
            };
            let m = mix(&lambda, p, q, Regime::NsProb).map_err(e)?;
            let lhs = NsReal::from_rational(case1_functional(&m, u).map_err(e)?);
            let fp = NsReal::from_rational(case1_functional(p, u).map_err(e)?);
            let fq = NsReal::from_rational(case1_functional(q, u).map_err(e)?);
            let rhs = &lambda * &fp + (NsReal::one() - &lambda) * &fq;
            let diff = &lhs - &rhs;
            ensure(diff.is_zero() || diff.is_infinitesimal(), || {
                format!("{m}: {lhs} vs {rhs}")
            })?;
        }
        holds_all(&s, &[Postulate::B2]).map_err(|m| format!("ns-prob: {m}"))?;
    }
    let u = UtilityAssignment::from_pairs([("a", NsReal::one()), ("b", NsReal::zero())]).map_err(e)?;
    let gens = vec![Lottery::degenerate("a"), Lottery::degenerate("b")];
    let eps = is_negligible(&NsReal::eps(), &u, &gens).map_err(e)?;
    let half = is_negligible(&NsReal::ratio(1, 2), &u, &gens).map_err(e)?;
    ensure(eps && !half, || format!("negligible(eps) = {eps}, negligible(1/2) = {half}"))?;
    Ok("100 instances, eps negligible, 1/2 not".into())
}

fn acts_suite() -> Outcome {
    let mut g = rng(11);
    let mut states_checked = 0;
    for (regime, postulate) in [(Regime::Std, Postulate::A4), (Regime::NsUtil, Postulate::A5Prime)] {
        for _ in 0..50 {
            let (model, acts) = rand_acts(&mut g, regime);
            let gens = (0..3).map(|i| Lottery::degenerate(outcome(i))).collect();
            let s = PrefStructure::new(regime, model.utilities.clone(), gens)
                .map_err(e)?
                .with_depth(0)
                .with_acts(model.clone(), acts.clone())
                .map_err(e)?;
            holds_all(&s, &[postulate]).map_err(|m| format!("{regime}: {m}"))?;
            for t in model.states.ids() {
                let null = is_null(t, &model, &acts).map_err(e)?;
                // definitional sweep, recomputed here
                let mut sweep = true;
                for a in &acts {
                    for b in &acts {
                        let a2 = a.with(t, b.at(t).unwrap().clone());
                        if act_prefers(a, &a2, &model).map_err(e)? != PrefOrdering::Indifferent {
                            sweep = false;
                        }
                    }
                }
                ensure(null == sweep, || format!("state {t}: is_null {null}, sweep {sweep}"))?;
                states_checked += 1;
            }
        }
    }
    Ok(format!("A4 on 50, A'5 on 50, is_null on {states_checked} states"))
}

fn field_and_format() -> Outcome {
    let mut g = rng(13);
    for _ in 0..1000 {
        let x = rand_nsreal(&mut g);
        let text = render_nsreal(&x);
        let back = parse_nsreal(&text).map_err(e)?;
        ensure(back == x, || format!("{text} parsed back as {back}"))?;
        // a scrambled spelling of x renders canonically
        let mut scrambled = String::from("eps^5");
        for (k, c) in x.terms().iter().rev() {
            let sign = if c.is_negative() { '-' } else { '+' };
            let (num, den) = (c.numer().abs() * 2, c.denom() * 2);
            scrambled.push_str(&format!(" {sign} {num}/{den}*eps^{k}"));
        }
        scrambled.push_str(" - 1*eps^5");
        let parsed = parse_nsreal(&scrambled).map_err(e)?;
        ensure(render_nsreal(&parsed) == text, || format!("{scrambled} renders as {parsed}"))?;
    }
    for _ in 0..1000 {
        let (x, y, z) = (rand_nsreal(&mut g), rand_nsreal(&mut g), rand_nsreal(&mut g));
        let zero = NsReal::zero();
        let one = NsReal::one();
        let ring = &x + &y == &y + &x
            && &x * &y == &y * &x
            && (&x + &y) + &z == &x + (&y + &z)
            && (&x * &y) * &z == &x * (&y * &z)
            && &x * (&y + &z) == &x * &y + &x * &z
            && &x + &zero == x
            && &x * &one == x
            && &x + &(-&x) == zero;
        ensure(ring, || format!("ring axioms fail on {x}, {y}, {z}"))?;
        if x.qcompare(&y) == QOrdering::Greater {
            ensure((&x - &y).sign() == 1, || format!("{x} >> {y} but not >"))?;
        }
        if x > y {
            ensure(&x + &z > &y + &z, || format!("+ compat {x} {y} {z}"))?;
            if z.sign() > 0 {
                ensure(&x * &z > &y * &z, || format!("* compat {x} {y} {z}"))?;
            }
        }
    }
    for _ in 0..1000 {
        let (x, y) = (rand_positive(&mut g), rand_positive(&mut g));
        let rule = x.qcompare(&y) == QOrdering::Greater;
        let oracle = qgreater_by_ratio(&x, &y);
        ensure(rule == oracle, || format!("{x} vs {y}: rule {rule}, ratio {oracle}"))?;
    }
    Ok("1000 round trips, 1000 ring/order triples, 1000 ratio-oracle pairs".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dice", dice),
        ("consolation", consolation),
        ("surgery", surgery),
        ("maximin", maximin),
        ("soundness", soundness),
        ("lexicographic", lexicographic),
        ("case-1", case1),
        ("acts", acts_suite),
        ("field-format", field_and_format),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

