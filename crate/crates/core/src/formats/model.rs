//! Model documents: a TOML file declaring outcomes, lotteries, mixtures,
//! states, acts and audit options. Numbers are written as literal strings
//! (`"1/6 - 1/6*eps"`); plain integers are accepted too.
//!
//! ```toml
//! regime = "ns-util"
//!
//! [audit]
//! grid-denominator = 4
//! closure-depth = 1
//!
//! [outcomes]
//! hawaii = "1"
//! magazine = "eps"
//! nothing = 0
//!
//! [lotteries.two]
//! hawaii = "1/2"
//! magazine = "1/2"
//! ```

use indexmap::IndexMap;
use serde::Deserialize;

use crate::acts::{AaModel, Act, Belief, StateSpace};
use crate::auditor::{self, Postulate, PrefStructure};
use crate::error::{Error, Result};
use crate::formats::literal::parse_nsreal;
use crate::nsreal::NsReal;
use crate::pref::{
    check_weight, compare_values, expected_utility, mix, Lottery, PrefOrdering, Regime,
    UtilityAssignment,
};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Literal {
    Text(String),
    Int(i64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMixture {
    weight: Literal,
    first: String,
    second: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawAudit {
    grid_denominator: Option<u32>,
    closure_depth: Option<u32>,
    postulates: Option<Vec<String>>,
    generators: Option<Vec<String>>,
    act_generators: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawModel {
    regime: String,
    #[serde(default)]
    signed_utilities: bool,
    #[serde(default)]
    audit: RawAudit,
    outcomes: IndexMap<String, Literal>,
    #[serde(default)]
    lotteries: IndexMap<String, IndexMap<String, Literal>>,
    #[serde(default)]
    mixtures: IndexMap<String, RawMixture>,
    #[serde(default)]
    states: IndexMap<String, Literal>,
    #[serde(default)]
    acts: IndexMap<String, IndexMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditOptions {
    pub grid: u32,
    pub depth: u32,
    /// Explicit postulate list; `None` means the regime's defaults.
    pub postulates: Option<Vec<Postulate>>,
    /// Ids of generator lotteries (lottery or outcome ids).
    pub generators: Vec<String>,
    pub act_generators: Vec<String>,
}

/// Something a model id can name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alternative {
    Lottery(Lottery),
    Act(Act),
}

/// A validated model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub regime: Regime,
    pub outcomes: Vec<String>,
    pub utilities: UtilityAssignment,
    /// Declared lotteries and mixtures, in document order.
    pub lotteries: IndexMap<String, Lottery>,
    pub model: Option<AaModel>,
    pub acts: IndexMap<String, Act>,
    pub audit: AuditOptions,
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

fn literal(path: &str, lit: &Literal) -> Result<NsReal> {
    match lit {
        Literal::Int(n) => Ok(NsReal::from_int(*n)),
        Literal::Text(t) => parse_nsreal(t).map_err(|e| schema(path, e.to_string())),
    }
}

/// Puts the regime's path prefix on a violation raised by a value check.
fn at_path(path: &str, e: Error) -> Error {
    match e {
        Error::RegimeViolation { literal, msg, .. } => Error::RegimeViolation {
            path: path.to_string(),
            literal,
            msg,
        },
        other => schema(path, other.to_string()),
    }
}

/// Parses and validates a model document.
pub fn parse_model(text: &str) -> Result<ModelDocument> {
    parse_model_as(text, None)
}

/// Like [`parse_model`], with the document's regime replaced by `regime`.
pub fn parse_model_as(text: &str, regime: Option<Regime>) -> Result<ModelDocument> {
    let raw: RawModel = toml::from_str(text).map_err(|e| schema("", e.to_string()))?;
    let regime = match regime {
        Some(r) => r,
        None => Regime::from_tag(&raw.regime).ok_or_else(|| {
            schema(
                "regime",
                format!("unknown regime `{}` (std, ns-util, ns-prob, ns)", raw.regime),
            )
        })?,
    };

    let mut utilities = if raw.signed_utilities {
        UtilityAssignment::signed()
    } else {
        UtilityAssignment::new()
    };
    let mut outcomes = Vec::new();
    for (id, lit) in &raw.outcomes {
        let path = format!("outcomes.{id}");
        let v = literal(&path, lit)?;
        utilities
            .insert(id.clone(), v)
            .map_err(|e| schema(&path, e.to_string()))?;
        outcomes.push(id.clone());
    }
    utilities.check_regime(regime)?;

    let mut doc = ModelDocument {
        regime,
        outcomes,
        utilities,
        lotteries: IndexMap::new(),
        model: None,
        acts: IndexMap::new(),
        audit: AuditOptions {
            grid: raw.audit.grid_denominator.unwrap_or(auditor::DEFAULT_GRID),
            depth: raw.audit.closure_depth.unwrap_or(auditor::DEFAULT_DEPTH),
            postulates: None,
            generators: Vec::new(),
            act_generators: Vec::new(),
        },
    };

    for (id, entries) in &raw.lotteries {
        if doc.utilities.get(id).is_some() {
            return Err(schema(
                format!("lotteries.{id}"),
                "id is already used by an outcome",
            ));
        }
        let mut probs = Vec::with_capacity(entries.len());
        for (outcome, lit) in entries {
            let path = format!("lotteries.{id}.{outcome}");
            if doc.utilities.get(outcome).is_none() {
                return Err(schema(path, format!("no utility for outcome `{outcome}`")));
            }
            probs.push((outcome.clone(), literal(&path, lit)?));
        }
        let path = format!("lotteries.{id}");
        let l = Lottery::new(probs).map_err(|e| schema(&path, e.to_string()))?;
        l.check_regime(regime).map_err(|e| match e {
            Error::RegimeViolation { path: o, literal, msg } => Error::RegimeViolation {
                path: format!("{path}.{o}"),
                literal,
                msg,
            },
            other => other,
        })?;
        doc.lotteries.insert(id.clone(), l);
    }

    for (id, m) in &raw.mixtures {
        let path = format!("mixtures.{id}");
        if doc.utilities.get(id).is_some() || doc.lotteries.contains_key(id) {
            return Err(schema(&path, "id is already in use"));
        }
        let w = literal(&format!("{path}.weight"), &m.weight)?;
        check_weight(&w, regime).map_err(|e| schema(format!("{path}.weight"), e.to_string()))?;
        let first = doc
            .lottery(&m.first)
            .map_err(|_| schema(format!("{path}.first"), format!("unknown id `{}`", m.first)))?;
        let second = doc.lottery(&m.second).map_err(|_| {
            schema(format!("{path}.second"), format!("unknown id `{}`", m.second))
        })?;
        let l = mix(&w, &first, &second, regime).map_err(|e| schema(&path, e.to_string()))?;
        doc.lotteries.insert(id.clone(), l);
    }

    if !raw.states.is_empty() {
        let states = StateSpace::new(raw.states.keys().cloned())
            .map_err(|e| schema("states", e.to_string()))?;
        let mut belief = Vec::with_capacity(raw.states.len());
        for (id, lit) in &raw.states {
            belief.push((id.clone(), literal(&format!("states.{id}"), lit)?));
        }
        let belief = Belief::new(belief).map_err(|e| schema("states", e.to_string()))?;
        let model = AaModel::new(states, belief, doc.utilities.clone(), regime)?;
        doc.model = Some(model);
    }

    for (id, entries) in &raw.acts {
        let path = format!("acts.{id}");
        let model = doc
            .model
            .as_ref()
            .ok_or_else(|| schema(&path, "acts need a [states] section"))?;
        if doc.utilities.get(id).is_some() || doc.lotteries.contains_key(id) {
            return Err(schema(&path, "id is already in use"));
        }
        let mut map = Vec::with_capacity(entries.len());
        for (state, target) in entries {
            let p = format!("{path}.{state}");
            if !model.states.contains(state) {
                return Err(schema(p, format!("unknown state `{state}`")));
            }
            let l = doc
                .lottery(target)
                .map_err(|_| schema(&p, format!("unknown lottery or outcome `{target}`")))?;
            l.check_regime(regime).map_err(|e| at_path(&p, e))?;
            map.push((state.clone(), l));
        }
        if let Some(missing) = model.states.ids().iter().find(|s| !entries.contains_key(*s)) {
            return Err(schema(&path, format!("act is not defined on state `{missing}`")));
        }
        doc.acts.insert(id.clone(), Act::new(map));
    }

    if let Some(names) = &raw.audit.postulates {
        let mut ps = Vec::with_capacity(names.len());
        for name in names {
            ps.push(Postulate::from_name(name).ok_or_else(|| {
                schema("audit.postulates", format!("unknown postulate `{name}`"))
            })?);
        }
        doc.audit.postulates = Some(ps);
    }
    doc.audit.generators = match &raw.audit.generators {
        Some(ids) => {
            for id in ids {
                doc.lottery(id)
                    .map_err(|_| schema("audit.generators", format!("unknown id `{id}`")))?;
            }
            ids.clone()
        }
        None => doc.outcomes.clone(),
    };
    doc.audit.act_generators = match &raw.audit.act_generators {
        Some(ids) => {
            for id in ids {
                if !doc.acts.contains_key(id) {
                    return Err(schema("audit.act-generators", format!("unknown act `{id}`")));
                }
            }
            ids.clone()
        }
        None => doc.acts.keys().cloned().collect(),
    };
    if doc.audit.grid < 2 {
        return Err(schema("audit.grid-denominator", "must be at least 2"));
    }
    Ok(doc)
}

impl ModelDocument {
    /// A declared lottery, or the sure lottery of an outcome.
    pub fn lottery(&self, id: &str) -> Result<Lottery> {
        if let Some(l) = self.lotteries.get(id) {
            return Ok(l.clone());
        }
        if self.utilities.get(id).is_some() {
            return Ok(Lottery::degenerate(id));
        }
        Err(Error::UnknownId(id.to_string()))
    }

    pub fn alternative(&self, id: &str) -> Result<Alternative> {
        if let Some(a) = self.acts.get(id) {
            return Ok(Alternative::Act(a.clone()));
        }
        self.lottery(id).map(Alternative::Lottery)
    }

    /// Expected utility of a lottery, or subjective expected utility of an act.
    pub fn value(&self, id: &str) -> Result<NsReal> {
        match self.alternative(id)? {
            Alternative::Lottery(l) => expected_utility(&l, &self.utilities),
            Alternative::Act(a) => {
                let m = self.model.as_ref().ok_or(Error::MissingModel)?;
                crate::acts::act_utility(&a, m)
            }
        }
    }

    pub fn compare(&self, a: &str, b: &str) -> Result<PrefOrdering> {
        compare_values(&self.value(a)?, &self.value(b)?, self.regime)
    }

    pub fn postulates(&self) -> Vec<Postulate> {
        self.audit.postulates.clone().unwrap_or_else(|| {
            Postulate::defaults(self.regime, !self.audit.act_generators.is_empty())
        })
    }

    /// The structure the audit runs on.
    pub fn structure(&self) -> Result<PrefStructure> {
        let gens = self
            .audit
            .generators
            .iter()
            .map(|id| self.lottery(id))
            .collect::<Result<Vec<_>>>()?;
        let mut s = PrefStructure::new(self.regime, self.utilities.clone(), gens)?
            .with_grid(self.audit.grid)?
            .with_depth(self.audit.depth);
        if let (Some(m), false) = (&self.model, self.audit.act_generators.is_empty()) {
            let acts = self
                .audit
                .act_generators
                .iter()
                .map(|id| self.acts[id].clone())
                .collect();
            s = s.with_acts(m.clone(), acts)?;
        }
        Ok(s)
    }
}
