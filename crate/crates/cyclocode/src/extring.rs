//! Quotient rings GF(q)[x]/(f) and the deterministic splitting of
//! (x^n - 1)/(x - 1) over GF(q) for prime n coprime to q.
//!
//! The splitting never builds GF(q^d) explicitly. Because the Frobenius map
//! a -> a^q permutes the power basis of GF(q)[x]/(x^n - 1), its fixed
//! algebra is spanned by the q-coset indicator vectors e_S = sum_{i in S}
//! x^i, which are available with no linear algebra. Each indicator is
//! separated into its eigenvalues via its minimal polynomial over GF(q),
//! and gcds with (e_S - c) split the cyclotomic polynomial into the
//! irreducible factors, all of degree ord_n(q).

use crate::arith;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// The ring GF(q)[x]/(modulus). Elements are polynomials of degree below
/// the modulus degree; when the modulus is irreducible this is the field
/// GF(q^deg) with ring operations only (no inverses needed by callers).
pub struct QuotientRing {
    modulus: Poly,
}

impl QuotientRing {
    pub fn new(modulus: Poly) -> Result<QuotientRing> {
        if modulus.degree().is_none() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuotientRing {
            modulus: modulus.make_monic()?,
        })
    }

    pub fn field(&self) -> &Field {
        self.modulus.field()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The class of x.
    pub fn x(&self) -> Poly {
        Poly::monomial(self.field(), 1, 1)
            .rem(&self.modulus)
            .expect("modulus is nonzero")
    }

    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        p.rem(&self.modulus)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.add(b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.mul(b)?.rem(&self.modulus)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Result<Poly> {
        let mut acc = Poly::one(self.field());
        let mut base = self.reduce(a)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// q-cyclotomic cosets of {1, ..., n-1} mod n, each sorted ascending,
/// ordered by smallest element. For prime n every coset has size
/// ord_n(q).
pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<Vec<Vec<u64>>> {
    let q = q % n;
    if q == 0 {
        return Err(Error::NotCoprime { n, p: q });
    }
    let mut seen = vec![false; n as usize];
    seen[0] = true;
    let mut cosets = Vec::new();
    for s in 1..n {
        if seen[s as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut t = s;
        while !seen[t as usize] {
            seen[t as usize] = true;
            coset.push(t);
            t = arith::mul_mod(t, q, n);
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(cosets)
}

/// Monic irreducible factors of (x^n - 1)/(x - 1) over the given field,
/// for prime n coprime to the characteristic. Factors all have degree
/// ord_n(q) and are returned sorted by their coefficient vectors, so the
/// first factor is a canonical choice of minimal polynomial for a
/// primitive n-th root of unity.
pub fn cyclotomic_factors(field: &Field, n: u64) -> Result<Vec<Poly>> {
    if !arith::is_prime(n) || n == 2 {
        return Err(Error::NotPrime(n));
    }
    let q_mod_n = (field.cardinality() % n as u128) as u64;
    if q_mod_n == 0 {
        return Err(Error::NotCoprime {
            n,
            p: field.characteristic(),
        });
    }
    let h = Poly::x_n_minus_1(field, n as usize)
        .exact_div(&Poly::from_coeffs(field, vec![field.neg(1), 1]))?;
    let cosets = cyclotomic_cosets(n, q_mod_n)?;
    let d = cosets[0].len();
    let mut factors = vec![h.clone()];
    if cosets.len() == 1 {
        return Ok(factors);
    }
    let card = field.cardinality() as u64;
    for coset in &cosets {
        if factors.iter().all(|f| f.degree() == Some(d)) {
            break;
        }
        let mut coeffs = vec![0u64; n as usize];
        for &i in coset {
            coeffs[i as usize] = 1;
        }
        let b = Poly::from_coeffs(field, coeffs).rem(&h)?;
        let mu = min_poly_mod(&b, &h)?;
        let mut roots: Vec<u64> = (0..card).filter(|&c| mu.eval(c) == 0).collect();
        roots.sort_unstable();
        let mut next = Vec::with_capacity(factors.len());
        for f in factors {
            if f.degree() == Some(d) {
                next.push(f);
                continue;
            }
            let mut pieces = vec![f];
            for &c in &roots {
                let shift = Poly::from_coeffs(field, vec![field.neg(c)]);
                let mut split_out = Vec::with_capacity(pieces.len());
                for piece in pieces {
                    if piece.degree() == Some(d) {
                        split_out.push(piece);
                        continue;
                    }
                    let bc = b.rem(&piece)?.add(&shift)?;
                    if bc.is_zero() {
                        split_out.push(piece);
                        continue;
                    }
                    let g = piece.gcd(&bc)?;
                    let gd = g.degree().unwrap_or(0);
                    if gd == 0 || Some(gd) == piece.degree() {
                        split_out.push(piece);
                    } else {
                        split_out.push(piece.exact_div(&g)?.make_monic()?);
                        split_out.push(g);
                    }
                }
                pieces = split_out;
            }
            next.extend(pieces);
        }
        factors = next;
    }
    if factors.iter().any(|f| f.degree() != Some(d)) {
        return Err(Error::InconsistentInput(format!(
            "splitting of x^{n} - 1 over GF({}) did not complete",
            field.cardinality()
        )));
    }
    factors.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(factors)
}

/// Minimal polynomial over GF(q) of the ring element `b` in
/// GF(q)[x]/(h): the lowest-degree monic relation among 1, b, b^2, ...
fn min_poly_mod(b: &Poly, h: &Poly) -> Result<Poly> {
    let field = b.field().clone();
    let dim = h.degree().ok_or(Error::DivisionByZero)?;
    // Echelon rows: (reduced vector, pivot, expression in powers of b).
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut power = Poly::one(&field);
    for j in 0..=dim + 1 {
        let mut vec: Vec<u64> = (0..dim).map(|i| power.coeff(i)).collect();
        let mut combo = vec![0u64; j + 1];
        combo[j] = 1;
        for (rvec, rpivot, rcombo) in &rows {
            let c = vec[*rpivot];
            if c != 0 {
                for (vi, ri) in vec.iter_mut().zip(rvec.iter()) {
                    *vi = field.sub(*vi, field.mul(c, *ri));
                }
                for (i, rc) in rcombo.iter().enumerate() {
                    combo[i] = field.sub(combo[i], field.mul(c, *rc));
                }
            }
        }
        match vec.iter().position(|&c| c != 0) {
            Some(pivot) => {
                let inv = field.inv(vec[pivot])?;
                for v in vec.iter_mut() {
                    *v = field.mul(*v, inv);
                }
                for c in combo.iter_mut() {
                    *c = field.mul(*c, inv);
                }
                combo.resize(j + 1, 0);
                rows.push((vec, pivot, combo));
            }
            None => {
                return Ok(Poly::from_coeffs(&field, combo));
            }
        }
        power = power.mul(b)?.rem(h)?;
    }
    Err(Error::InconsistentInput(
        "no minimal polynomial found below ring dimension".into(),
    ))
}

/// Checks the quadratic-residue period identity theta (theta + 1) =
/// (n - 1)/4 for a prime n = 1 mod 4, with theta the sum of eta^i over
/// the squares mod n and eta a canonical primitive n-th root of unity
/// over the given field.
pub fn theta_identity_holds(field: &Field, n: u64) -> Result<bool> {
    if !arith::is_prime(n) || n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    if field.cardinality() % n as u128 == 0 {
        return Err(Error::NotCoprime {
            n,
            p: field.characteristic(),
        });
    }
    let f = cyclotomic_factors(field, n)?
        .into_iter()
        .next()
        .expect("n > 2 has factors");
    let ring = QuotientRing::new(f)?;
    let mut theta = Poly::zero(field);
    let mut is_square = vec![false; n as usize];
    for t in 1..n {
        is_square[arith::mul_mod(t, t, n) as usize] = true;
    }
    let x = ring.x();
    let mut pow = Poly::one(field);
    for i in 1..n {
        pow = ring.mul(&pow, &x)?;
        if is_square[i as usize] {
            theta = theta.add(&pow)?;
        }
    }
    let lhs = ring.mul(&theta, &theta.add(&Poly::one(field))?)?;
    let rhs = Poly::from_coeffs(field, vec![field.from_int((n - 1) / 4)]);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_of_two_mod_seven() {
        let cosets = cyclotomic_cosets(7, 2).unwrap();
        assert_eq!(cosets, vec![vec![1, 2, 4], vec![3, 5, 6]]);
    }

    #[test]
    fn binary_factors_of_length_seven_are_the_classic_pair() {
        let gf2 = Field::prime(2).unwrap();
        let factors = cyclotomic_factors(&gf2, 7).unwrap();
        let strings: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(strings, vec!["x^3 + x^2 + 1", "x^3 + x + 1"]);
    }

    #[test]
    fn ternary_factors_of_length_thirteen_multiply_back() {
        let gf3 = Field::prime(3).unwrap();
        let factors = cyclotomic_factors(&gf3, 13).unwrap();
        assert_eq!(factors.len(), 4, "ord_13(3) = 3 gives four cubic factors");
        let mut product = Poly::from_coeffs(&gf3, vec![gf3.neg(1), 1]);
        for f in &factors {
            assert_eq!(f.degree(), Some(3));
            assert_eq!(f.leading_coeff(), 1);
            product = product.mul(f).unwrap();
        }
        assert_eq!(
            product,
            Poly::x_n_minus_1(&gf3, 13),
            "factors rebuild x^13 - 1"
        );
        for (i, a) in factors.iter().enumerate() {
            for b in factors.iter().skip(i + 1) {
                assert_eq!(
                    a.gcd(b).unwrap(),
                    Poly::one(&gf3),
                    "factors must be coprime"
                );
            }
        }
    }

    #[test]
    fn factor_sets_match_known_small_cases() {
        // x^13 - 1 over GF(3) factors through the four cubics printed in
        // standard tables.
        let gf3 = Field::prime(3).unwrap();
        let strings: Vec<String> = cyclotomic_factors(&gf3, 13)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        for expected in [
            "x^3 + 2x + 2",
            "x^3 + x^2 + 2",
            "x^3 + x^2 + x + 2",
            "x^3 + 2x^2 + 2x + 2",
        ] {
            assert!(
                strings.contains(&expected.to_string()),
                "missing factor {expected}; got {strings:?}"
            );
        }
    }

    #[test]
    fn quartic_field_splits_length_seventeen() {
        let gf4 = Field::galois(2, 2).unwrap();
        let factors = cyclotomic_factors(&gf4, 17).unwrap();
        assert_eq!(factors.len(), 4, "ord_17(4) = 4 gives four quartics");
        let mut product = Poly::from_coeffs(&gf4, vec![1, 1]);
        for f in &factors {
            assert_eq!(f.degree(), Some(4));
            product = product.mul(f).unwrap();
        }
        assert_eq!(product, Poly::x_n_minus_1(&gf4, 17));
    }

    #[test]
    fn irreducible_case_returns_single_factor() {
        // 2 is primitive mod 11, so (x^11 - 1)/(x - 1) is irreducible
        // over GF(2).
        let gf2 = Field::prime(2).unwrap();
        let factors = cyclotomic_factors(&gf2, 11).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].degree(), Some(10));
    }

    #[test]
    fn fully_split_case_returns_linear_factors() {
        // 3 | 13 - 1, so x^13 - 1 splits into linear factors over GF(27).
        let gf27 = Field::galois(3, 3).unwrap();
        let factors = cyclotomic_factors(&gf27, 13).unwrap();
        assert_eq!(factors.len(), 12);
        assert!(factors.iter().all(|f| f.degree() == Some(1)));
    }

    #[test]
    fn binary_length_113_splits_into_four_factors() {
        let gf2 = Field::prime(2).unwrap();
        let factors = cyclotomic_factors(&gf2, 113).unwrap();
        assert_eq!(factors.len(), 4, "ord_113(2) = 28");
        assert!(factors.iter().all(|f| f.degree() == Some(28)));
    }

    #[test]
    fn quotient_ring_reduces_x_power_n_to_one() {
        let gf3 = Field::prime(3).unwrap();
        let f = cyclotomic_factors(&gf3, 13).unwrap().remove(0);
        let ring = QuotientRing::new(f).unwrap();
        let xn = ring.pow(&ring.x(), 13).unwrap();
        assert_eq!(xn, Poly::one(&gf3), "x^13 = 1 in the root field");
        let x1 = ring.pow(&ring.x(), 1).unwrap();
        assert_ne!(x1, Poly::one(&gf3));
    }

    #[test]
    fn theta_identity_holds_for_good_pairs() {
        let gf3 = Field::prime(3).unwrap();
        assert!(theta_identity_holds(&gf3, 13).unwrap());
        let gf2 = Field::prime(2).unwrap();
        assert!(theta_identity_holds(&gf2, 73).unwrap());
        assert!(
            theta_identity_holds(&gf2, 13).unwrap(),
            "identity holds with any coprime q"
        );
        let gf4 = Field::galois(2, 2).unwrap();
        assert!(theta_identity_holds(&gf4, 17).unwrap());
    }

    #[test]
    fn theta_identity_rejects_wrong_residue_class() {
        let gf2 = Field::prime(2).unwrap();
        assert!(matches!(
            theta_identity_holds(&gf2, 7),
            Err(Error::NotOneModFour(7))
        ));
        let gf13 = Field::prime(13).unwrap();
        assert!(matches!(
            theta_identity_holds(&gf13, 13),
            Err(Error::NotCoprime { .. })
        ));
    }
}
