//! Versioned TOML scenarios: factors, generators and expected outputs.
//!
//! ```toml
//! schema = 1
//! name = "bielliptic"
//!
//! [[factor]]
//! kind = "elliptic"
//! period = "tau1"
//!
//! [[factor]]
//! kind = "k3"
//!
//! [[generator]]
//! name = "gamma"
//! map = ["z1 + 1/2"]
//! formal = [-1]
//!
//! [expect]
//! order = 2
//! ```
//!
//! A `map` entry is a signed coordinate plus optional rational shifts, where a
//! shift may be a multiple of that coordinate's period: `-z4 + 1/4`,
//! `z3 + 1/2*tau3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use super::{
    action_free, generate_group, invariant_forms, quotient_hodge, AffineAuto, FiniteGroup,
    FormalKind, FormalShift, TorusError, TorusModel, Q,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, field `{field}`: {message}")]
pub struct ScenarioError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema: Spanned<u32>,
    name: Option<String>,
    description: Option<String>,
    #[serde(default)]
    factor: Vec<RawFactor>,
    #[serde(default)]
    generator: Vec<RawGenerator>,
    expect: Option<Expectation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    kind: Spanned<String>,
    period: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: Option<String>,
    map: Spanned<Vec<Spanned<String>>>,
    formal: Option<Spanned<Vec<i64>>>,
}

/// Expected outputs; every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub order: Option<usize>,
    pub abelian: Option<bool>,
    pub max_element_order: Option<usize>,
    pub free: Option<bool>,
    /// Invariant `p`-forms on the torus part for `p = 1..=n`.
    pub forms: Option<Vec<u64>>,
    /// `h^{p,0}` for `p = 0..=4`.
    pub hodge: Option<Vec<u64>>,
    /// `h^q(O_X)` for `q = 1..=3`.
    pub middle: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub description: Option<String>,
    pub model: TorusModel,
    pub generators: Vec<(String, AffineAuto)>,
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioOutcome {
    pub order: usize,
    pub abelian: bool,
    pub max_element_order: usize,
    /// Absent when there is no torus part.
    pub free: Option<bool>,
    pub forms: Vec<u64>,
    pub hodge: Option<Vec<u64>>,
    pub middle: Option<Vec<u64>>,
    /// Set when the quotient Hodge computation was refused.
    pub hodge_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: &'static str,
    pub expected: String,
    pub found: String,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn err_at(text: &str, offset: usize, field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError {
        line: line_of(text, offset),
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parse one `map` entry for coordinate `i` (0-based).
fn parse_map_entry(entry: &str, i: usize, model: &TorusModel) -> Result<(usize, i64, FormalShift), String> {
    let n = model.n();
    let period = &model.periods[i];
    let mut src: Option<(usize, i64)> = None;
    let mut shift = FormalShift::zero();
    let compact: String = entry.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty entry".into());
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (k, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && k > 0 && !cur.ends_with('/') && !cur.ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        if let Some(idx) = body.strip_prefix('z') {
            let j: usize = idx.parse().map_err(|_| format!("bad coordinate `{body}`"))?;
            if j == 0 || j > n {
                return Err(format!("coordinate z{j} out of range 1..={n}"));
            }
            if src.replace((j - 1, sign)).is_some() {
                return Err("more than one coordinate term".into());
            }
            continue;
        }
        let (coef, is_tau) = match body.split_once('*') {
            Some((c, p)) if p == period => (c, true),
            Some((_, p)) => return Err(format!("`{p}` is not the period `{period}` of z{}", i + 1)),
            None if body == period => ("1", true),
            None => (body, false),
        };
        let value = parse_rational(coef).ok_or_else(|| format!("bad rational `{coef}`"))? * Q::from(sign);
        if is_tau {
            shift.tau += value;
        } else {
            shift.re += value;
        }
    }
    let (j, s) = src.ok_or("missing coordinate term")?;
    Ok((j, s, shift))
}

fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.parse().ok()?, d.parse().ok()?);
            (d != 0).then(|| Q::new(n, d))
        }
        None => Some(Q::from(s.parse::<i64>().ok()?)),
    }
}

pub fn load_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        let message = e.message().to_string();
        let field = message
            .split('`')
            .nth(1)
            .unwrap_or("document")
            .to_string();
        err_at(text, offset, &field, message)
    })?;
    if *raw.schema.get_ref() != SCHEMA_VERSION {
        return Err(err_at(
            text,
            raw.schema.span().start,
            "schema",
            format!("unsupported schema version {}, expected {SCHEMA_VERSION}", raw.schema.get_ref()),
        ));
    }
    let mut periods = Vec::new();
    let mut formal = Vec::new();
    for f in &raw.factor {
        match f.kind.get_ref().as_str() {
            "elliptic" => {
                let p = f.period.as_ref().ok_or_else(|| {
                    err_at(text, f.kind.span().start, "factor.period", "elliptic factor needs a period")
                })?;
                if !formal.is_empty() {
                    return Err(err_at(
                        text,
                        f.kind.span().start,
                        "factor.kind",
                        "elliptic factors must precede formal factors",
                    ));
                }
                periods.push(p.get_ref().clone());
            }
            kind @ ("k3" | "cy3") => {
                if let Some(p) = &f.period {
                    return Err(err_at(text, p.span().start, "factor.period", "only elliptic factors have periods"));
                }
                formal.push(if kind == "k3" { FormalKind::K3 } else { FormalKind::CY3 });
            }
            other => {
                return Err(err_at(
                    text,
                    f.kind.span().start,
                    "factor.kind",
                    format!("unknown factor kind `{other}` (expected elliptic, k3 or cy3)"),
                ))
            }
        }
    }
    let model = TorusModel::new(periods, formal);
    let n = model.n();
    let mut generators = Vec::new();
    for (gi, g) in raw.generator.iter().enumerate() {
        let name = g.name.clone().unwrap_or_else(|| format!("g{}", gi + 1));
        let entries = g.map.get_ref();
        if entries.len() != n {
            return Err(err_at(
                text,
                g.map.span().start,
                "generator.map",
                format!("{} entries for {n} elliptic factors", entries.len()),
            ));
        }
        let mut l = vec![vec![0i64; n]; n];
        let mut t = Vec::with_capacity(n);
        for (i, e) in entries.iter().enumerate() {
            let (j, s, shift) = parse_map_entry(e.get_ref(), i, &model)
                .map_err(|m| err_at(text, e.span().start, "generator.map", m))?;
            l[i][j] = s;
            t.push(shift);
        }
        let signs = match &g.formal {
            Some(s) => s.get_ref().clone(),
            None => vec![1; model.formal.len()],
        };
        let span = g.formal.as_ref().map_or(g.map.span().start, |s| s.span().start);
        let f = AffineAuto::new(&model, l, t, signs).map_err(|e| {
            let field = match e {
                TorusError::BadFormalSign | TorusError::DimensionMismatch { .. } if g.formal.is_some() => {
                    "generator.formal"
                }
                _ => "generator.map",
            };
            err_at(text, if field == "generator.formal" { span } else { g.map.span().start }, field, e.to_string())
        })?;
        generators.push((name, f));
    }
    Ok(Scenario {
        name: raw.name.unwrap_or_else(|| "scenario".into()),
        description: raw.description,
        model,
        generators,
        expect: raw.expect.unwrap_or_default(),
    })
}

impl Scenario {
    pub fn group(&self) -> Result<FiniteGroup, TorusError> {
        let gens: Vec<AffineAuto> = self.generators.iter().map(|(_, g)| g.clone()).collect();
        generate_group(&self.model, &gens)
    }

    pub fn run(&self) -> Result<ScenarioOutcome, TorusError> {
        let g = self.group()?;
        let n = self.model.n();
        let (hodge, middle, hodge_error) = match quotient_hodge(&g) {
            Ok(h) => (Some(h.hp0.clone()), Some(h.middle().to_vec()), None),
            Err(e @ (TorusError::NonTrivialCanonical { .. } | TorusError::WrongTotalDimension(_))) => {
                (None, None, Some(e.to_string()))
            }
            Err(e) => return Err(e),
        };
        Ok(ScenarioOutcome {
            order: g.order(),
            abelian: g.is_abelian(),
            max_element_order: g.max_element_order(),
            free: (n > 0).then(|| action_free(&g)),
            forms: (1..=n).map(|p| invariant_forms(&g, p)).collect(),
            hodge,
            middle,
            hodge_error,
        })
    }
}

impl ScenarioOutcome {
    /// Differences from the expectation, field by field.
    pub fn diff(&self, e: &Expectation) -> Vec<Mismatch> {
        fn check<T: PartialEq + std::fmt::Debug>(
            out: &mut Vec<Mismatch>,
            field: &'static str,
            expected: &Option<T>,
            found: &T,
        ) {
            if let Some(x) = expected {
                if x != found {
                    out.push(Mismatch {
                        field,
                        expected: format!("{x:?}"),
                        found: format!("{found:?}"),
                    });
                }
            }
        }
        let mut out = Vec::new();
        check(&mut out, "order", &e.order, &self.order);
        check(&mut out, "abelian", &e.abelian, &self.abelian);
        check(&mut out, "max_element_order", &e.max_element_order, &self.max_element_order);
        check(&mut out, "free", &e.free.map(Some), &self.free);
        check(&mut out, "forms", &e.forms, &self.forms);
        check(&mut out, "hodge", &e.hodge.clone().map(Some), &self.hodge);
        check(&mut out, "middle", &e.middle.clone().map(Some), &self.middle);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIELLIPTIC: &str = r#"
schema = 1
name = "bielliptic"

[[factor]]
kind = "elliptic"
period = "tau1"

[[factor]]
kind = "elliptic"
period = "tau2"

[[factor]]
kind = "k3"

[[generator]]
name = "gamma"
map = ["z1 + 1/2", "-z2"]
formal = [-1]

[expect]
order = 2
free = true
hodge = [1, 1, 0, 1, 1]
middle = [1, 0, 1]
"#;

    #[test]
    fn loads_and_runs() {
        let s = load_scenario(BIELLIPTIC).unwrap();
        assert_eq!(s.model.n(), 2);
        let out = s.run().unwrap();
        assert!(out.diff(&s.expect).is_empty(), "{:?}", out.diff(&s.expect));
        assert_eq!(out.forms, vec![1, 0]);
    }

    #[test]
    fn map_entries() {
        let m = TorusModel::new(vec!["tau".into(), "tau3".into()], vec![]);
        let (j, s, sh) = parse_map_entry("-z2 + 1/4 + 1/2*tau3", 1, &m).unwrap();
        assert_eq!((j, s), (1, -1));
        assert_eq!(sh, FormalShift::new(Q::new(1, 4), Q::new(1, 2)));
        let (_, _, sh) = parse_map_entry("z2 - tau3", 1, &m).unwrap();
        assert_eq!(sh.tau, Q::from(-1));
        assert!(parse_map_entry("z1 + 1/2*tau3", 0, &m).is_err());
        assert!(parse_map_entry("1/2", 0, &m).is_err());
        assert!(parse_map_entry("z1 + z2", 0, &m).is_err());
        assert!(parse_map_entry("z3", 0, &m).is_err());
    }

    #[test]
    fn diagnostics_carry_line_and_field() {
        let bad = BIELLIPTIC.replace("\"-z2\"", "\"-z7\"");
        let e = load_scenario(&bad).unwrap_err();
        assert_eq!(e.field, "generator.map");
        assert_eq!(e.line, 18);
        let bad = BIELLIPTIC.replace("kind = \"k3\"", "kind = \"k4\"");
        let e = load_scenario(&bad).unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (14, "factor.kind"));
        let bad = BIELLIPTIC.replace("schema = 1", "schema = 9");
        assert_eq!(load_scenario(&bad).unwrap_err().field, "schema");
        let bad = BIELLIPTIC.replace("order = 2", "ordr = 2");
        let e = load_scenario(&bad).unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (22, "ordr"));
        let bad = BIELLIPTIC.replace("formal = [-1]", "formal = [-2]");
        assert_eq!(load_scenario(&bad).unwrap_err().field, "generator.formal");
    }

    #[test]
    fn mismatches_are_listed() {
        let s = load_scenario(&BIELLIPTIC.replace("order = 2", "order = 4")).unwrap();
        let d = s.run().unwrap().diff(&s.expect);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].field, "order");
    }
}
