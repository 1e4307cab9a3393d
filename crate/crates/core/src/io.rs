//! JSON formats.
//!
//! Field presentation:
//! `{"p": 2, "tower": [1, 5], "defining_poly": [1,0,1,0,0,1], "generator": [0,1]}`.
//! `tower` lists absolute degrees over F_p, each dividing the next; the
//! first entry is F_q. `defining_poly` and `generator` (both optional,
//! prime-field digits with the constant term first) pin the top level.
//!
//! Field elements are digit lists like `[0, 1]`, or plain integers which
//! are read as constants mod p.
//!
//! Linearized polynomial: `{"q_coeffs": [[5, 1], [2, -1], [0, 1]]}`, one
//! `[i, a_i]` pair per term of `Σ a_i X^{q^i}`.
//!
//! Code spec: `{"q", "n", "k", "l", "N", "trinomials": [[θ, γ], ...],
//! "binomial": a0 | null, "field": presentation | absent}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::linpoly::LinearizedPoly;
use crate::nt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "default_tower")]
    pub tower: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defining_poly: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<u32>>,
}

fn default_tower() -> Vec<u32> {
    vec![1]
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

impl FieldSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text, "field spec")
    }

    /// F_{q^n} with default presentations throughout.
    pub fn for_q_n(q: u64, n: u32) -> Result<Self> {
        let (p, e) = nt::prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
        let mut tower = vec![e];
        if n > 1 {
            tower.push(e * n);
        }
        Ok(Self {
            p,
            tower,
            defining_poly: None,
            generator: None,
        })
    }

    pub fn build(&self) -> Result<FieldCtx> {
        let tower = if self.tower.is_empty() {
            default_tower()
        } else {
            self.tower.clone()
        };
        if tower[0] == 0 || tower.windows(2).any(|w| w[0] == 0 || w[1] % w[0] != 0 || w[1] == w[0]) {
            return Err(Error::InvalidInput(format!(
                "tower {tower:?} must be strictly increasing with each degree dividing the next"
            )));
        }
        let mut ctx = FieldCtx::prime_field(self.p)?;
        let top = tower.len() - 1;
        let pinned = |level: usize| level == top;
        for (level, &d) in tower.iter().enumerate() {
            let rel = d / ctx.degree();
            if rel > 1 || (pinned(level) && (self.defining_poly.is_some() || self.generator.is_some()))
            {
                let (poly, generator) = if pinned(level) {
                    (self.defining_poly.as_deref(), self.generator.as_deref())
                } else {
                    (None, None)
                };
                if rel == 1 && poly.is_some() {
                    return Err(Error::InvalidInput(
                        "a defining polynomial needs a proper extension".into(),
                    ));
                }
                ctx = ctx.extend_with(rel, poly, generator)?;
            }
            if level == 0 {
                ctx = ctx.mark_base_level();
            }
        }
        Ok(ctx)
    }

    /// Presentation of an existing context: tower from F_q to the top.
    pub fn describe(ctx: &FieldCtx) -> Self {
        let mut tower = vec![ctx.degree()];
        let mut cur = ctx.clone();
        while cur.degree() > ctx.q_degree() {
            cur = cur.parent().expect("base level lies on the chain").clone();
            tower.push(cur.degree());
        }
        tower.reverse();
        Self {
            p: ctx.characteristic() as u64,
            tower,
            defining_poly: Some(ctx.defining_poly().to_vec()),
            generator: Some(ctx.generator().coeffs().to_vec()),
        }
    }
}

/// A field element from a JSON digit list or integer constant.
pub fn element_from_json(ctx: &FieldCtx, value: &Value) -> Result<FieldElement> {
    match value {
        Value::Number(n) => {
            let v = n
                .as_i64()
                .ok_or_else(|| Error::InvalidInput(format!("{n} is not an integer")))?;
            Ok(ctx.from_int(v))
        }
        Value::Array(items) => {
            let p = ctx.characteristic() as i64;
            let digits = items
                .iter()
                .map(|d| {
                    d.as_i64()
                        .map(|x| x.rem_euclid(p) as u32)
                        .ok_or_else(|| Error::InvalidInput(format!("digit {d} is not an integer")))
                })
                .collect::<Result<Vec<u32>>>()?;
            ctx.element(&digits)
        }
        other => Err(Error::InvalidInput(format!("cannot read a field element from {other}"))),
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    let mut digits = x.coeffs().to_vec();
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    Value::from(digits)
}

#[derive(Deserialize)]
struct PolyLiteral {
    q_coeffs: Vec<(usize, Value)>,
}

pub fn poly_from_json(ctx: &FieldCtx, text: &str) -> Result<LinearizedPoly> {
    let lit: PolyLiteral = parse(text, "polynomial literal")?;
    let terms = lit
        .q_coeffs
        .iter()
        .map(|(i, v)| Ok((*i, element_from_json(ctx, v)?)))
        .collect::<Result<Vec<_>>>()?;
    LinearizedPoly::from_terms(ctx, &terms)
}

pub fn poly_to_json(f: &LinearizedPoly) -> Value {
    let terms: Vec<Value> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| serde_json::json!([i, element_to_json(c)]))
        .collect();
    serde_json::json!({ "q_coeffs": terms })
}

#[derive(Serialize, Deserialize)]
struct CodeSpecJson {
    q: u64,
    n: u32,
    k: u32,
    l: u32,
    #[serde(rename = "N")]
    big_n: u32,
    #[serde(default)]
    trinomials: Vec<(Value, Value)>,
    #[serde(default)]
    binomial: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldSpec>,
}

/// Reads a code spec. `field` overrides any presentation inside the JSON;
/// otherwise defaults are used.
pub fn code_spec_from_json(text: &str, field: Option<&FieldCtx>) -> Result<CodeSpec> {
    let raw: CodeSpecJson = parse(text, "code spec")?;
    let ctx = match (field, &raw.field) {
        (Some(ctx), _) => ctx.clone(),
        (None, Some(spec)) => spec.build()?,
        (None, None) => FieldSpec::for_q_n(raw.q, raw.n)?.build()?,
    };
    if ctx.q() != raw.q || ctx.degree_over_q() != raw.n {
        return Err(Error::IncompatibleFields(format!(
            "field presents F_{}^{}, spec asks for F_{}^{}",
            ctx.q(),
            ctx.degree_over_q(),
            raw.q,
            raw.n
        )));
    }
    let trinomials = raw
        .trinomials
        .iter()
        .map(|(t, g)| Ok((element_from_json(&ctx, t)?, element_from_json(&ctx, g)?)))
        .collect::<Result<Vec<_>>>()?;
    let binomial = raw
        .binomial
        .as_ref()
        .filter(|v| !v.is_null())
        .map(|v| element_from_json(&ctx, v))
        .transpose()?;
    Ok(CodeSpec {
        field: ctx,
        k: raw.k,
        l: raw.l,
        ambient_degree: raw.big_n,
        trinomials,
        binomial,
    })
}

pub fn code_spec_to_json(spec: &CodeSpec) -> Value {
    let raw = CodeSpecJson {
        q: spec.q(),
        n: spec.n(),
        k: spec.k,
        l: spec.l,
        big_n: spec.ambient_degree,
        trinomials: spec
            .trinomials
            .iter()
            .map(|(t, g)| (element_to_json(t), element_to_json(g)))
            .collect(),
        binomial: spec.binomial.as_ref().map(element_to_json),
        field: Some(FieldSpec::describe(&spec.field)),
    };
    serde_json::to_value(raw).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_f32_presentation() {
        let spec = FieldSpec::from_json(
            r#"{"p":2,"tower":[1,5],"defining_poly":[1,0,1,0,0,1],"generator":[0,1]}"#,
        )
        .unwrap();
        let f = spec.build().unwrap();
        assert_eq!(f.degree(), 5);
        assert_eq!(f.q(), 2);
        assert_eq!(f.generator().coeffs(), &[0, 1, 0, 0, 0]);
        let back = FieldSpec::describe(&f);
        assert_eq!(back.tower, vec![1, 5]);
        assert_eq!(back.build().unwrap(), f);
    }

    #[test]
    fn non_prime_base_level() {
        let spec = FieldSpec::for_q_n(4, 3).unwrap();
        assert_eq!(spec.tower, vec![2, 6]);
        let f = spec.build().unwrap();
        assert_eq!((f.q(), f.degree_over_q()), (4, 3));
    }

    #[test]
    fn bad_tower_rejected() {
        let spec = FieldSpec::from_json(r#"{"p":2,"tower":[2,5]}"#).unwrap();
        assert!(spec.build().is_err());
    }

    #[test]
    fn polynomial_literal() {
        let f3 = FieldCtx::prime_field(3).unwrap();
        let f = poly_from_json(&f3, r#"{"q_coeffs": [[5, 1], [1, 1], [0, 1]]}"#).unwrap();
        assert_eq!(f.splitting_degree(1000).unwrap(), 78);
        let again = poly_from_json(&f3, &poly_to_json(&f).to_string()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn code_spec_round_trip() {
        let text = r#"{"q":2,"n":2,"k":3,"l":2,"N":8,"trinomials":[[1,[0,1]],[1,[1,1]]],"binomial":null}"#;
        let spec = code_spec_from_json(text, None).unwrap();
        assert_eq!(spec.trinomials.len(), 2);
        let again = code_spec_from_json(&code_spec_to_json(&spec).to_string(), None).unwrap();
        assert_eq!(again, spec);
    }
}
