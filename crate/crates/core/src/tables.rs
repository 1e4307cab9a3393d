//! Splitting degrees for two reference families:
//!
//! * `X^{3^5} + a_l X^{3^l} + a_0 X` over F_3 for `l = 1..4`, `a_l, a_0 = ±1`;
//! * `X^{2^5} + θ_i X^{2^l} + θ_i X` over F_{2^5}, with `θ_i` the powers
//!   `θ^3, θ^6, θ^12, θ^17, θ^24` of the field generator, combined per `l`
//!   by lcm.
//!
//! Each row carries the published reference value next to the computed one.

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::ff::FieldCtx;
use crate::linpoly::LinearizedPoly;

pub const TABLE31_REFERENCE: [u64; 16] = [
    78, 78, 242, 121, 80, 104, 312, 80, 80, 80, 312, 104, 78, 121, 242, 78,
];
pub const TABLE31_REFERENCE_MINIMAL: [u64; 4] = [78, 121, 80, 104];
pub const TABLE32_REFERENCE: [u64; 4] = [30, 70, 75, 60];
pub const TABLE32_EXPONENTS: [u64; 5] = [3, 6, 12, 17, 24];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table31Row {
    pub l: u32,
    pub a_l: i64,
    pub a0: i64,
    pub polynomial: String,
    pub degree: u64,
    pub reference: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table31 {
    pub rows: Vec<Table31Row>,
    /// Minimal computed degrees under divisibility, in order of first
    /// appearance.
    pub minimal: Vec<u64>,
    pub reference_minimal: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table32Row {
    pub l: u32,
    /// Splitting degree of each of the five trinomials.
    pub degrees: Vec<u64>,
    pub lcm: u64,
    pub reference: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table32 {
    pub defining_poly: Vec<u32>,
    pub generator: Vec<u32>,
    pub rows: Vec<Table32Row>,
}

fn signed(c: i64) -> &'static str {
    if c < 0 {
        "-"
    } else {
        "+"
    }
}

/// Degrees minimal under divisibility, deduplicated, in first-seen order.
pub fn divisibility_minimal(values: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &v in values {
        let dominated = values.iter().any(|&w| w != v && v % w == 0);
        if !dominated && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn table31(cap: u64) -> Result<Table31> {
    let f3 = FieldCtx::prime_field(3)?;
    let mut rows = Vec::with_capacity(16);
    let signs = [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)];
    for l in 1..=4u32 {
        for &(a_l, a0) in &signs {
            let poly = LinearizedPoly::trinomial(5, l as usize, &f3.from_int(a_l), &f3.from_int(a0))?;
            let degree = poly.splitting_degree(cap)?;
            let reference = TABLE31_REFERENCE[rows.len()];
            rows.push(Table31Row {
                l,
                a_l,
                a0,
                polynomial: format!("X^(3^5) {} X^(3^{l}) {} X", signed(a_l), signed(a0)),
                degree,
                reference,
                matches: degree == reference,
            });
        }
    }
    let degrees: Vec<u64> = rows.iter().map(|r| r.degree).collect();
    Ok(Table31 {
        minimal: divisibility_minimal(&degrees),
        reference_minimal: TABLE31_REFERENCE_MINIMAL.to_vec(),
        rows,
    })
}

/// `field` must present F_{2^5} over F_2; its generator plays the role of θ.
pub fn table32(field: &FieldCtx, cap: u64) -> Result<Table32> {
    if field.characteristic() != 2 || field.degree() != 5 || field.q() != 2 {
        return Err(crate::Error::InvalidInput(
            "the field must be F_32 presented over F_2".into(),
        ));
    }
    let theta = field.generator();
    let mut rows = Vec::new();
    for l in 1..=4u32 {
        let mut degrees = Vec::new();
        for &e in &TABLE32_EXPONENTS {
            let t = theta.pow_u64(e);
            degrees.push(LinearizedPoly::trinomial(5, l as usize, &t, &t)?.splitting_degree(cap)?);
        }
        let lcm = degrees.iter().fold(1u64, |acc, d| acc.lcm(d));
        let reference = TABLE32_REFERENCE[l as usize - 1];
        rows.push(Table32Row {
            l,
            degrees,
            lcm,
            reference,
            matches: lcm == reference,
        });
    }
    Ok(Table32 {
        defining_poly: field.defining_poly().to_vec(),
        generator: theta.coeffs().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_elements() {
        assert_eq!(divisibility_minimal(&[78, 78, 242, 121, 80, 104, 312]), vec![78, 121, 80, 104]);
        assert_eq!(divisibility_minimal(&[6, 3, 2, 4]), vec![3, 2]);
    }

    #[test]
    fn table32_default_presentation() {
        let f = FieldCtx::prime_field(2).unwrap().extend(5, None).unwrap();
        let t = table32(&f, 1_000_000).unwrap();
        assert_eq!(t.defining_poly, vec![1, 0, 1, 0, 0, 1]);
        assert_eq!(t.generator, vec![0, 1, 0, 0, 0]);
        let lcms: Vec<u64> = t.rows.iter().map(|r| r.lcm).collect();
        assert_eq!(lcms, TABLE32_REFERENCE.to_vec());
    }
}
