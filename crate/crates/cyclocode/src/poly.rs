//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored constant-term first and kept normalized: the
//! leading coefficient is nonzero and the zero polynomial has no
//! coefficients. Display follows the descending-power convention used
//! throughout the crate's reports, e.g. "x^9 + x^7 + 2x^4 + x + 2";
//! coefficients outside the prime subfield render parenthesized, e.g.
//! "(a + 1)x^3".

use crate::error::{Error, Result};
use crate::field::Field;

/// Polynomial over a finite field, constant coefficient first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![1],
        }
    }

    /// Builds a polynomial from coefficients, constant term first;
    /// trailing zeros are trimmed.
    pub fn from_coeffs(field: &Field, coeffs: Vec<u64>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// The monomial c x^e.
    pub fn monomial(field: &Field, c: u64, e: usize) -> Poly {
        if c == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// x^n - 1 over the given field.
    pub fn x_n_minus_1(field: &Field, n: usize) -> Poly {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of x^e (zero beyond the degree).
    pub fn coeff(&self, e: usize) -> u64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, item) in out.iter_mut().enumerate() {
            *item = self.field.add(self.coeff(i), other.coeff(i));
        }
        Ok(Poly::from_coeffs(&self.field, out))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = self.field.add(out[i + j], self.field.mul(a, b));
                }
            }
        }
        Ok(Poly::from_coeffs(&self.field, out))
    }

    /// Quotient and remainder; errors when dividing by zero.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        while rem.len() > dd {
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            let shift = rem.len() - 1 - dd;
            if c != 0 {
                quot[shift] = c;
                for (j, &mj) in divisor.coeffs.iter().enumerate().take(dd) {
                    let sub = f.mul(c, mj);
                    rem[shift + j] = f.sub(rem[shift + j], sub);
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InconsistentInput(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; errors when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scales so the leading coefficient is one.
    pub fn make_monic(&self) -> Result<Poly> {
        let lead = self.leading_coeff();
        if lead == 0 {
            return Err(Error::DivisionByZero);
        }
        if lead == 1 {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// self^e mod modulus.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field);
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluation at a point of the coefficient field.
    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add(self.field.mul(acc, x), c);
        }
        acc
    }

    /// Evaluation at a point of an extension field; coefficients are
    /// embedded first.
    pub fn eval_in(&self, ext: &Field, x: u64) -> Result<u64> {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            let ec = ext.embed(&self.field, c)?;
            acc = ext.add(ext.mul(acc, x), ec);
        }
        Ok(acc)
    }

    /// Coefficients reversed: x^deg * self(1/x). Fixed points of this map
    /// are the self-reciprocal polynomials.
    pub fn reverse(&self) -> Poly {
        let mut coeffs: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as u64), c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Expands prod (x - r) over the given field.
    pub fn from_roots(field: &Field, roots: &[u64]) -> Poly {
        let mut acc = Poly::one(field);
        for &r in roots {
            let lin = Poly::from_coeffs(field, vec![field.neg(r), 1]);
            acc = acc.mul(&lin).expect("same field");
        }
        acc
    }

    /// Maps every coefficient down to a subfield; errors with
    /// NotInSubfield when any coefficient fails to project.
    pub fn project_to(&self, sub: &Field) -> Result<Poly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            coeffs.push(self.field.project(sub, c)?);
        }
        Ok(Poly {
            field: sub.clone(),
            coeffs,
        })
    }

    /// Lifts every coefficient into an extension field.
    pub fn lift_to(&self, ext: &Field) -> Result<Poly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            coeffs.push(ext.embed(&self.field, c)?);
        }
        Ok(Poly {
            field: ext.clone(),
            coeffs,
        })
    }

    /// Parses the descending-power format produced by Display.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Poly::zero(field));
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in split_top_level(s)? {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling + in {s:?}")));
            }
            let (coeff, rest) = if let Some(stripped) = term.strip_prefix('(') {
                let close = stripped
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {term:?}")))?;
                let c = field.parse_element(&stripped[..close])?;
                (c, stripped[close + 1..].trim_start())
            } else {
                let xpos = term.find('x').unwrap_or(term.len());
                let head = term[..xpos].trim();
                let c = if head.is_empty() {
                    1
                } else {
                    head.parse::<u64>()
                        .map(|v| field.from_int(v))
                        .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
                };
                (c, &term[xpos..])
            };
            let exp = if rest.is_empty() {
                0usize
            } else if rest == "x" {
                1
            } else if let Some(stripped) = rest.strip_prefix("x^") {
                stripped
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
            } else {
                return Err(Error::Parse(format!("unexpected term {term:?}")));
            };
            if exp >= coeffs.len() {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = field.add(coeffs[exp], coeff);
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }
}

/// Splits on top-level " + " while keeping parenthesized coefficient
/// expressions intact.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
            }
            b'+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parenthesis in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.field.characteristic();
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = c == 1;
            if c < p {
                if !unit || e == 0 {
                    write!(f, "{c}")?;
                }
            } else {
                write!(f, "({})", self.field.format_element(c))?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn random_poly(f: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let deg = rng.gen_range(0..=max_deg);
        let card = f.cardinality() as u64;
        let coeffs = (0..=deg).map(|_| rng.gen_range(0..card)).collect();
        Poly::from_coeffs(f, coeffs)
    }

    #[test]
    fn display_matches_expected_style() {
        let f3 = gf(3);
        let p = Poly::from_coeffs(&f3, vec![2, 1, 0, 0, 2, 0, 0, 1, 0, 1]);
        assert_eq!(p.to_string(), "x^9 + x^7 + 2x^4 + x + 2");
        assert_eq!(Poly::zero(&f3).to_string(), "0");
        assert_eq!(Poly::one(&f3).to_string(), "1");
        let gf4 = Field::galois(2, 2).unwrap();
        let q = Poly::from_coeffs(&gf4, vec![1, 3, 1]);
        assert_eq!(q.to_string(), "x^2 + (a + 1)x + 1");
    }

    #[test]
    fn parse_inverts_display() {
        let fields = [
            gf(2),
            gf(3),
            gf(7),
            Field::galois(2, 2).unwrap(),
            Field::galois(3, 2).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in &fields {
            for _ in 0..200 {
                let p = random_poly(f, 12, &mut rng);
                let s = p.to_string();
                let back = Poly::parse(f, &s).unwrap();
                assert_eq!(back, p, "parse failed to invert display of {s:?}");
            }
        }
    }

    #[test]
    fn divrem_reconstructs_dividend() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in [gf(2), gf(3), gf(7), Field::galois(2, 4).unwrap()] {
            for _ in 0..200 {
                let a = random_poly(&f, 20, &mut rng);
                let mut b = random_poly(&f, 8, &mut rng);
                if b.is_zero() {
                    b = Poly::one(&f);
                }
                let (q, r) = a.divrem(&b).unwrap();
                let back = q.mul(&b).unwrap().add(&r).unwrap();
                assert_eq!(back, a, "a != q*b + r");
                if let (Some(rd), Some(bd)) = (r.degree(), b.degree()) {
                    assert!(rd < bd, "remainder degree must drop");
                }
            }
        }
    }

    #[test]
    fn gcd_divides_both_and_is_monic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = gf(5);
        for _ in 0..100 {
            let g = random_poly(&f, 4, &mut rng);
            if g.is_zero() {
                continue;
            }
            let a = g.mul(&random_poly(&f, 5, &mut rng)).unwrap();
            let b = g.mul(&random_poly(&f, 5, &mut rng)).unwrap();
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let d = a.gcd(&b).unwrap();
            assert_eq!(d.leading_coeff(), 1, "gcd must be monic");
            if !a.is_zero() {
                assert!(a.rem(&d).unwrap().is_zero(), "gcd must divide a");
            }
            if !b.is_zero() {
                assert!(b.rem(&d).unwrap().is_zero(), "gcd must divide b");
            }
            assert!(
                d.degree() >= g.degree(),
                "gcd at least as large as a common factor"
            );
        }
        assert!(matches!(
            Poly::zero(&f).gcd(&Poly::zero(&f)),
            Err(crate::error::Error::BothZero)
        ));
    }

    #[test]
    fn eval_agrees_with_explicit_sum() {
        let f = gf(13);
        let p = Poly::parse(&f, "x^3 + 4x + 7").unwrap();
        for x in 0..13u64 {
            let expected = (x * x % 13 * x % 13 + 4 * x % 13 + 7) % 13;
            assert_eq!(p.eval(x), expected);
        }
    }

    #[test]
    fn from_roots_expands_and_projects() {
        let gf2 = gf(2);
        let gf16 = Field::galois(2, 4).unwrap();
        let a = gf16.primitive();
        // The conjugates of a primitive element multiply out to a
        // polynomial with GF(2) coefficients.
        let roots = [a, gf16.pow(a, 2), gf16.pow(a, 4), gf16.pow(a, 8)];
        let m = Poly::from_roots(&gf16, &roots);
        let down = m.project_to(&gf2).unwrap();
        assert_eq!(down.degree(), Some(4));
        for &r in &roots {
            assert_eq!(
                down.eval_in(&gf16, r).unwrap(),
                0,
                "root must vanish after projection"
            );
        }
        let bad = Poly::from_roots(&gf16, &[a]);
        assert!(
            bad.project_to(&gf2).is_err(),
            "a single conjugate does not project"
        );
    }

    #[test]
    fn reverse_squares_to_identity_on_nonzero_constant_terms() {
        let f = gf(3);
        let p = Poly::parse(&f, "x^4 + 2x + 1").unwrap();
        assert_eq!(p.reverse().reverse(), p);
        assert_eq!(p.reverse().to_string(), "x^4 + 2x^3 + 1");
    }

    #[test]
    fn x_n_minus_1_has_expected_shape() {
        let f = gf(7);
        let p = Poly::x_n_minus_1(&f, 5);
        assert_eq!(p.to_string(), "x^5 + 6");
        assert_eq!(p.eval(1), 0, "1 is always a root of x^n - 1");
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let a = Poly::one(&gf(3));
        let b = Poly::one(&gf(5));
        assert!(matches!(a.add(&b), Err(crate::error::Error::FieldMismatch)));
    }
}
