//! Cyclotomic classes modulo a prime, cyclotomic numbers (brute force and
//! closed form), the two-square decomposition n = u^2 + 4 v^2, biquadratic
//! residue criteria for 2, 3, 5, and complex Gaussian periods.

use num_complex::Complex64;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::Field;

/// Cyclotomic classes of a given order modulo an odd prime n.
///
/// With g the smallest primitive root mod n and N the order, class i is
/// the coset g^i <g^N> of the group of N-th power residues. Class indices
/// are taken mod N throughout.
pub struct ClassCtx {
    n: u64,
    order: u64,
    g: u64,
    class_of: Vec<u32>,
    classes: Vec<Vec<u64>>,
}

impl ClassCtx {
    pub fn new(n: u64, order: u64) -> Result<ClassCtx> {
        if !arith::is_prime(n) || n == 2 {
            return Err(Error::NotPrime(n));
        }
        if order == 0 || (n - 1) % order != 0 {
            return Err(Error::OrderMismatch { n, order });
        }
        let g = arith::smallest_primitive_root(n);
        let mut class_of = vec![u32::MAX; n as usize];
        let mut classes = vec![Vec::with_capacity(((n - 1) / order) as usize); order as usize];
        let mut pow = 1u64;
        for e in 0..n - 1 {
            let c = (e % order) as usize;
            class_of[pow as usize] = c as u32;
            classes[c].push(pow);
            pow = arith::mul_mod(pow, g, n);
        }
        for cl in &mut classes {
            cl.sort_unstable();
        }
        Ok(ClassCtx {
            n,
            order,
            g,
            class_of,
            classes,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The smallest primitive root used to index the classes.
    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Class index of x, or None when x = 0 mod n.
    pub fn class_of(&self, x: u64) -> Option<usize> {
        let r = (x % self.n) as usize;
        let c = self.class_of[r];
        if c == u32::MAX {
            None
        } else {
            Some(c as usize)
        }
    }

    /// The elements of class i, ascending.
    pub fn class(&self, i: usize) -> &[u64] {
        &self.classes[i % self.order as usize]
    }

    /// Cyclotomic number (i, j): the count of x in class i with x + 1 in
    /// class j.
    pub fn cyclotomic_number(&self, i: usize, j: usize) -> u64 {
        let j = (j % self.order as usize) as u32;
        let mut count = 0;
        for &x in self.class(i) {
            let y = (x + 1) % self.n;
            if y != 0 && self.class_of[y as usize] == j {
                count += 1;
            }
        }
        count
    }

    /// The full order x order table of cyclotomic numbers.
    pub fn all_numbers(&self) -> Vec<Vec<u64>> {
        let ord = self.order as usize;
        (0..ord)
            .map(|i| (0..ord).map(|j| self.cyclotomic_number(i, j)).collect())
            .collect()
    }
}

/// Writes an odd prime n = 1 mod 4 as u^2 + 4 v^2 with u = 1 mod 4 and
/// v >= 0. The pair (|u|, v) is unique; the sign of v is a labeling choice
/// resolved separately against brute-force cyclotomic numbers.
pub fn quartic_decomposition(n: u64) -> Result<(i64, u64)> {
    if !arith::is_prime(n) || n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    let mut v = 0u64;
    loop {
        let rest = n - 4 * v * v;
        let a = arith::isqrt_u64(rest);
        if a * a == rest {
            debug_assert!(a % 2 == 1);
            let u = if a % 4 == 1 { a as i64 } else { -(a as i64) };
            return Ok((u, v));
        }
        v += 1;
        if 4 * v * v > n {
            return Err(Error::InconsistentInput(format!(
                "{n} has no representation u^2 + 4v^2"
            )));
        }
    }
}

/// Closed-form cyclotomic numbers of order two for an odd prime.
pub fn order2_closed_form(n: u64) -> Result<[[u64; 2]; 2]> {
    if !arith::is_prime(n) || n == 2 {
        return Err(Error::NotPrime(n));
    }
    Ok(if n % 4 == 1 {
        [[(n - 5) / 4, (n - 1) / 4], [(n - 1) / 4, (n - 1) / 4]]
    } else {
        [[(n - 3) / 4, (n + 1) / 4], [(n - 3) / 4, (n - 3) / 4]]
    })
}

/// Closed-form cyclotomic numbers of order four for a prime n = 1 mod 4,
/// given the decomposition n = u^2 + 4 v^2 with a chosen sign of v.
///
/// The table layout depends on n mod 8; entries B and D swap when v
/// changes sign, so callers must resolve the sign against one brute-force
/// count (see [`order4_numbers`]).
pub fn order4_closed_form(n: u64, u: i64, v: i64) -> Result<[[u64; 4]; 4]> {
    if n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    let ni = n as i64;
    let cell = |num: i64| -> Result<u64> {
        if num % 16 != 0 || num < 0 {
            return Err(Error::InconsistentInput(format!(
                "cyclotomic closed form not integral at n = {n}, u = {u}, v = {v}"
            )));
        }
        Ok((num / 16) as u64)
    };
    if n % 8 == 5 {
        let a = cell(ni - 7 + 2 * u)?;
        let b = cell(ni + 1 + 2 * u - 8 * v)?;
        let c = cell(ni + 1 - 6 * u)?;
        let d = cell(ni + 1 + 2 * u + 8 * v)?;
        let e = cell(ni - 3 - 2 * u)?;
        Ok([[a, b, c, d], [e, e, d, b], [a, e, a, e], [e, d, b, e]])
    } else {
        let a = cell(ni - 11 - 6 * u)?;
        let b = cell(ni - 3 + 2 * u + 8 * v)?;
        let c = cell(ni - 3 + 2 * u)?;
        let d = cell(ni - 3 + 2 * u - 8 * v)?;
        let e = cell(ni + 1 - 2 * u)?;
        Ok([[a, b, c, d], [b, d, e, e], [c, e, c, e], [d, e, e, b]])
    }
}

/// Order-four cyclotomic numbers with the sign of v resolved against the
/// classes generated by the smallest primitive root.
pub struct Order4Numbers {
    pub n: u64,
    pub u: i64,
    /// The signed v for which the closed form matches brute force.
    pub v: i64,
    pub table: [[u64; 4]; 4],
}

/// Resolves the sign of v and returns the full order-four table.
pub fn order4_numbers(n: u64) -> Result<Order4Numbers> {
    let (u, v_abs) = quartic_decomposition(n)?;
    let ctx = ClassCtx::new(n, 4)?;
    let probe = ctx.cyclotomic_number(0, 1);
    for v in [v_abs as i64, -(v_abs as i64)] {
        let table = order4_closed_form(n, u, v)?;
        if table[0][1] == probe {
            return Ok(Order4Numbers { n, u, v, table });
        }
        if v_abs == 0 {
            break;
        }
    }
    Err(Error::InconsistentInput(format!(
        "no sign of v matches brute-force cyclotomic numbers for n = {n}"
    )))
}

/// True when b (one of 2, 3, 5) is a fourth power modulo the prime
/// n = 1 mod 4, decided by the classical quadratic-form criteria from
/// biquadratic reciprocity.
pub fn reciprocity_criterion(n: u64, b: u64) -> Result<bool> {
    let (u, v) = quartic_decomposition(n)?;
    if n == b {
        return Err(Error::NotCoprime { n, p: b });
    }
    let ua = u.unsigned_abs();
    Ok(match b {
        // 2 is a fourth power iff n = a^2 + 64 b^2, i.e. 4 | v.
        2 => v % 4 == 0,
        // 3 is a fourth power iff in n = a^2 + 4 b^2 either 3 | b
        // (n = 1 mod 8) or 3 | a (n = 5 mod 8).
        3 => {
            if n % 8 == 1 {
                v % 3 == 0
            } else {
                ua % 3 == 0
            }
        }
        // 5 is a fourth power iff in n = a^2 + b^2 with b even, 5 | b.
        5 => v % 5 == 0,
        _ => return Err(Error::UnsupportedBase(b)),
    })
}

/// The index i of the order-four class containing q mod n, for q coprime
/// to n. This is the class of the field size when deciding whether the
/// class polynomials are defined over GF(q).
pub fn biquadratic_class_of(ctx: &ClassCtx, q: u128) -> Result<usize> {
    let r = (q % ctx.n() as u128) as u64;
    ctx.class_of(r)
        .ok_or(Error::NotCoprime { n: ctx.n(), p: r })
}

/// Complex Gaussian periods of order N for the field GF(p^m): period i is
/// the sum of e^(2 pi i Tr(x) / p) over the coset alpha^i <alpha^N>.
pub fn gaussian_periods(p: u64, m: u32, order: u64) -> Result<Vec<Complex64>> {
    let field = Field::galois(p, m)?;
    let r = field.cardinality();
    if r > 1 << 20 {
        return Err(Error::SizeLimit {
            what: "Gaussian period field",
            needed: r,
            cap: 1 << 20,
        });
    }
    if order == 0 || (r - 1) % order as u128 != 0 {
        return Err(Error::InconsistentInput(format!(
            "order {order} does not divide r - 1 = {}",
            r - 1
        )));
    }
    let prime = Field::prime(p)?;
    let alpha = field.primitive();
    let classes = order as usize;
    let mut periods = vec![Complex64::new(0.0, 0.0); classes];
    let tau = std::f64::consts::TAU;
    let mut x = 1u64;
    for e in 0..(r - 1) as u64 {
        let t = if m == 1 {
            x
        } else {
            field.trace_to(&prime, x)?
        };
        let angle = tau * t as f64 / p as f64;
        periods[(e % order) as usize] += Complex64::new(angle.cos(), angle.sin());
        x = field.mul(x, alpha);
    }
    Ok(periods)
}

/// Complex Gaussian periods of GF(r) of a given order, together with the
/// classical absolute bound they must satisfy.
pub struct GaussianPeriodReport {
    pub r: u64,
    pub order: u64,
    pub periods: Vec<Complex64>,
    /// The bound (N - 1) sqrt(r) / N on every |eta_i + 1/N|.
    pub bound: f64,
    /// Largest observed |eta_i + 1/N|.
    pub max_deviation: f64,
    /// |sum eta_i + 1|, which should vanish.
    pub sum_error: f64,
}

impl GaussianPeriodReport {
    /// True when the computed periods satisfy the absolute bound and sum
    /// to -1, up to floating-point slack.
    pub fn within_bound(&self) -> bool {
        self.max_deviation <= self.bound + 1e-9 && self.sum_error < 1e-9
    }
}

/// Computes the order-N Gaussian periods of GF(r) for a prime power
/// r <= 2^16 and checks them against the absolute bound
/// |eta_i + 1/N| <= (N - 1) sqrt(r) / N.
pub fn gaussian_period_report(r: u64, order: u64) -> Result<GaussianPeriodReport> {
    if r > 1 << 16 {
        return Err(Error::SizeLimit {
            what: "Gaussian period field",
            needed: r as u128,
            cap: 1 << 16,
        });
    }
    let (p, m) = arith::prime_power_split(r)
        .ok_or_else(|| Error::InconsistentInput(format!("{r} is not a prime power")))?;
    let periods = gaussian_periods(p, m, order)?;
    let nf = order as f64;
    let bound = (nf - 1.0) * (r as f64).sqrt() / nf;
    let max_deviation = periods
        .iter()
        .map(|eta| (eta + Complex64::new(1.0 / nf, 0.0)).norm())
        .fold(0.0, f64::max);
    let sum: Complex64 = periods.iter().sum();
    let sum_error = (sum + Complex64::new(1.0, 0.0)).norm();
    Ok(GaussianPeriodReport {
        r,
        order,
        periods,
        bound,
        max_deviation,
        sum_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_mod_13_match_hand_computation() {
        let ctx = ClassCtx::new(13, 4).unwrap();
        assert_eq!(ctx.generator(), 2);
        assert_eq!(ctx.class(0), &[1, 3, 9]);
        assert_eq!(ctx.class(1), &[2, 5, 6]);
        assert_eq!(ctx.class(2), &[4, 10, 12]);
        assert_eq!(ctx.class(3), &[7, 8, 11]);
        assert_eq!(ctx.class_of(0), None);
        assert_eq!(ctx.class_of(11), Some(3));
    }

    #[test]
    fn brute_force_numbers_mod_13() {
        let ctx = ClassCtx::new(13, 4).unwrap();
        let t = ctx.all_numbers();
        assert_eq!(t[0], vec![0, 1, 2, 0]);
        assert_eq!(t[1], vec![1, 1, 0, 1]);
        assert_eq!(t[2], vec![0, 1, 0, 1]);
        assert_eq!(t[3], vec![1, 0, 1, 1]);
    }

    #[test]
    fn quartic_decomposition_of_catalog_primes() {
        let cases = [
            (13, -3, 1),
            (17, 1, 2),
            (29, 5, 1),
            (41, 5, 2),
            (61, 5, 3),
            (73, -3, 4),
            (89, 5, 4),
            (109, -3, 5),
            (113, -7, 4),
        ];
        for (n, u, v) in cases {
            assert_eq!(
                quartic_decomposition(n).unwrap(),
                (u, v),
                "decomposition of {n}"
            );
        }
        assert!(
            quartic_decomposition(7).is_err(),
            "7 = 3 mod 4 has no decomposition"
        );
        assert!(quartic_decomposition(15).is_err(), "15 is composite");
    }

    #[test]
    fn order4_closed_form_matches_brute_force_on_both_layouts() {
        for n in [13u64, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113] {
            let resolved = order4_numbers(n).unwrap();
            let ctx = ClassCtx::new(n, 4).unwrap();
            let brute = ctx.all_numbers();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(
                        resolved.table[i][j], brute[i][j],
                        "closed form disagrees at ({i},{j}) for n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn order2_closed_form_matches_brute_force() {
        for n in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let closed = order2_closed_form(n).unwrap();
            let ctx = ClassCtx::new(n, 2).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(
                        closed[i][j],
                        ctx.cyclotomic_number(i, j),
                        "order-2 closed form disagrees at ({i},{j}) for n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn biquadratic_criteria_match_class_membership() {
        for n in (5u64..2000).filter(|&n| arith::is_prime(n) && n % 4 == 1) {
            let ctx = ClassCtx::new(n, 4).unwrap();
            for b in [2u64, 3, 5] {
                if n == b {
                    continue;
                }
                let direct = ctx.class_of(b) == Some(0);
                let criterion = reciprocity_criterion(n, b).unwrap();
                assert_eq!(
                    direct, criterion,
                    "criterion for {b} disagrees with classes at n = {n}"
                );
            }
        }
    }

    #[test]
    fn gaussian_periods_sum_to_minus_one() {
        for (p, m, order) in [(13u64, 1u32, 4u64), (5, 2, 4), (3, 4, 8), (2, 6, 7)] {
            let periods = gaussian_periods(p, m, order).unwrap();
            let sum: Complex64 = periods.iter().sum();
            assert!(
                (sum - Complex64::new(-1.0, 0.0)).norm() < 1e-9,
                "periods of GF({p}^{m}) order {order} must sum to -1, got {sum}"
            );
        }
    }

    #[test]
    fn invalid_class_parameters_are_rejected() {
        assert!(ClassCtx::new(12, 4).is_err(), "12 is not prime");
        assert!(matches!(
            ClassCtx::new(13, 5),
            Err(Error::OrderMismatch { n: 13, order: 5 })
        ));
        assert!(gaussian_periods(13, 1, 5).is_err());
        assert!(matches!(
            reciprocity_criterion(13, 7),
            Err(Error::UnsupportedBase(7))
        ));
    }

    #[test]
    fn class_of_field_size_matches_direct_membership() {
        let ctx = ClassCtx::new(41, 4).unwrap();
        // 4 = 2^2 lies in the biquadratic residues mod 41 because v = 2
        // is even (2 is a quadratic but not biquadratic residue).
        assert_eq!(biquadratic_class_of(&ctx, 4).unwrap(), 0);
        assert_eq!(biquadratic_class_of(&ctx, 2).unwrap(), 2);
        assert!(matches!(
            biquadratic_class_of(&ctx, 82),
            Err(Error::NotCoprime { n: 41, p: 0 })
        ));
    }

    #[test]
    fn period_reports_stay_within_the_absolute_bound() {
        for (r, order) in [(13u64, 4u64), (25, 4), (64, 7), (81, 8), (121, 4), (169, 2)] {
            let report = gaussian_period_report(r, order).unwrap();
            assert!(
                report.within_bound(),
                "periods of GF({r}) order {order}: max deviation {} exceeds bound {}",
                report.max_deviation,
                report.bound
            );
        }
        let trivial = gaussian_period_report(49, 1).unwrap();
        assert!(
            trivial.within_bound(),
            "single period must equal -1 exactly"
        );
        assert!(trivial.bound.abs() < 1e-12);
    }
}
