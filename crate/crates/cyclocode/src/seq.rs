//! The two binary-valued cyclotomic sequence families of order four, their
//! generating polynomials, minimal polynomials, and linear spans, plus an
//! independent Berlekamp-Massey implementation used to cross-check the
//! gcd-based span formula.

use serde_json::json;

use crate::arith;
use crate::cyclotomy::ClassCtx;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Which of the two order-four sequence families to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqKind {
    /// Support C_0 union C_1; the value at index 0 is 0.
    S1,
    /// Support C_1 union C_2 union C_3; the value at index 0 is rho.
    S2,
}

impl SeqKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeqKind::S1 => "s1",
            SeqKind::S2 => "s2",
        }
    }
}

/// A fully validated description of one sequence: the family, the prime
/// period n = 1 mod 4, the coefficient field GF(q), and (for S2 only)
/// the value rho at index 0.
pub struct SequenceSpec {
    pub kind: SeqKind,
    pub n: u64,
    pub field: Field,
    /// Value at index 0 for S2; None for S1.
    pub rho: Option<u64>,
}

impl SequenceSpec {
    pub fn new(kind: SeqKind, n: u64, field: &Field, rho: Option<u64>) -> Result<SequenceSpec> {
        if !arith::is_prime(n) || n % 4 != 1 {
            return Err(Error::NotOneModFour(n));
        }
        if n == field.characteristic() {
            return Err(Error::FieldDividesN {
                n,
                p: field.characteristic(),
            });
        }
        match (kind, rho) {
            (SeqKind::S1, None) => {}
            (SeqKind::S1, Some(_)) => {
                return Err(Error::InconsistentInput(
                    "rho only applies to the S2 family".into(),
                ));
            }
            (SeqKind::S2, Some(0)) | (SeqKind::S2, Some(1)) => {}
            (SeqKind::S2, _) => {
                return Err(Error::InconsistentInput("S2 requires rho in {0, 1}".into()));
            }
        }
        Ok(SequenceSpec {
            kind,
            n,
            field: field.clone(),
            rho,
        })
    }
}

/// One period of the sequence, as field elements restricted to {0, 1}.
pub fn generate(spec: &SequenceSpec) -> Result<Vec<u64>> {
    let ctx = ClassCtx::new(spec.n, 4)?;
    let mut period = vec![0u64; spec.n as usize];
    for i in 1..spec.n {
        let class = ctx.class_of(i).expect("nonzero residues all have a class");
        let one = match spec.kind {
            SeqKind::S1 => class <= 1,
            SeqKind::S2 => class >= 1,
        };
        if one {
            period[i as usize] = 1;
        }
    }
    if spec.kind == SeqKind::S2 {
        period[0] = spec.rho.expect("validated S2 spec has rho");
    }
    Ok(period)
}

/// The minimal polynomial and linear span of a periodic sequence, derived
/// from one period via m = (x^n - 1) / gcd(Lambda, x^n - 1).
pub struct SequenceAnalysis {
    pub period: Vec<u64>,
    /// The generating polynomial of one period.
    pub lambda: Poly,
    /// Monic minimal polynomial of the sequence.
    pub minimal_poly: Poly,
    pub linear_span: usize,
}

pub fn analyze(spec: &SequenceSpec) -> Result<SequenceAnalysis> {
    let period = generate(spec)?;
    analyze_period(&spec.field, &period)
}

/// Analysis of an arbitrary period vector over the given field. Exposed
/// separately so degenerate cases (the zero sequence) and raw supports can
/// reuse the same formula.
pub fn analyze_period(field: &Field, period: &[u64]) -> Result<SequenceAnalysis> {
    let n = period.len();
    let lambda = Poly::from_coeffs(field, period.to_vec());
    let xn1 = Poly::x_n_minus_1(field, n);
    let (minimal_poly, linear_span) = if lambda.is_zero() {
        (Poly::one(field), 0)
    } else {
        let common = lambda.gcd(&xn1)?;
        let m = xn1.exact_div(&common)?.make_monic()?;
        let span = m.degree().unwrap_or(0);
        (m, span)
    };
    Ok(SequenceAnalysis {
        period: period.to_vec(),
        lambda,
        minimal_poly,
        linear_span,
    })
}

/// Berlekamp-Massey over GF(q): the shortest LFSR generating the prefix.
///
/// Returns the feedback polynomial under the constant-term-1 convention
/// together with the span. An all-zero prefix returns the zero polynomial
/// and span 0.
pub fn berlekamp_massey(field: &Field, prefix: &[u64]) -> Result<(Poly, usize)> {
    if prefix.iter().all(|&s| s == 0) {
        return Ok((Poly::zero(field), 0));
    }
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut len = 0usize;
    let mut m = 1usize;
    let mut b_delta = 1u64;
    for i in 0..prefix.len() {
        let mut delta = prefix[i];
        for j in 1..c.len().min(i + 1) {
            delta = field.add(delta, field.mul(c[j], prefix[i - j]));
        }
        if delta == 0 {
            m += 1;
            continue;
        }
        let coef = field.mul(delta, field.inv(b_delta)?);
        let prev_c = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + m] = field.sub(c[j + m], field.mul(coef, bj));
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = prev_c;
            b_delta = delta;
            m = 1;
        } else {
            m += 1;
        }
    }
    Ok((Poly::from_coeffs(field, c), len))
}

/// Linear span over GF(p) of the characteristic sequence of a residue
/// support mod n, used to report the p-rank of the underlying set.
pub fn p_rank(support: &[u64], n: u64, p: u64) -> Result<usize> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n % p == 0 {
        return Err(Error::FieldDividesN { n, p });
    }
    let field = Field::prime(p)?;
    let mut period = vec![0u64; n as usize];
    for &s in support {
        if s >= n {
            return Err(Error::InconsistentInput(format!(
                "support element {s} is not a residue mod {n}"
            )));
        }
        period[s as usize] = 1;
    }
    Ok(analyze_period(&field, &period)?.linear_span)
}

/// One period rendered as a compact digit string (values below 16 map to
/// hex digits; anything wider falls back to comma separation).
pub fn period_digits(period: &[u64]) -> String {
    if period.iter().all(|&v| v < 16) {
        period
            .iter()
            .map(|&v| char::from_digit(v as u32, 16).expect("value below 16"))
            .collect()
    } else {
        period
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// JSON report for one analyzed sequence.
pub fn analysis_json(spec: &SequenceSpec, analysis: &SequenceAnalysis) -> serde_json::Value {
    json!({
        "n": spec.n,
        "q": spec.field.cardinality() as u64,
        "kind": spec.kind.name(),
        "rho": spec.rho,
        "period": period_digits(&analysis.period),
        "linear_span": analysis.linear_span,
        "minimal_poly": analysis.minimal_poly.to_string(),
    })
}
