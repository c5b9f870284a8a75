//! Weight bounds for irreducible cyclic codes and their relatives.
//!
//! The central objects are the codes C(r, N): fix a finite field GF(r) with
//! r = q^k, a divisor N of r - 1 with n = (r - 1)/N > 1, and a primitive
//! element alpha with theta = alpha^N. The code is the image of the trace
//! map a -> (Tr(a theta^i))_{i < n}, and its augmented variant adds a
//! constant b from GF(q) to every coordinate. Every nonzero weight of
//! C(r, N) lies in an interval of width controlled by (N_1 - 1)sqrt(r)
//! where N_1 = gcd((r - 1)/(q - 1), N), and the augmented code admits a
//! matching minimum-distance lower bound.
//!
//! Each bound is reported in two renderings. The analytic form evaluates
//! the underlying real expression and rounds once at the end (ceiling for
//! lower bounds, floor for upper bounds), which is the sharpest valid
//! integer statement. The literal form places the rounding brackets inside
//! the expression the way the bounds are conventionally printed; for some
//! parameters that placement is coarser and can even cross over (lower
//! above upper), so the report carries a divergence note whenever the two
//! renderings disagree in a way that matters. All roundings are decided
//! exactly: a comparison of t against (a + b sqrt r)/d is settled by big
//! integer squaring, never by floating point.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::code::StructureKind;
use crate::cyclotomy::{self, ClassCtx};
use crate::error::{Error, Result};
use crate::field::Field;

/// Ceiling of the square root of an integer.
pub fn sqrt_ceil(n: u64) -> u64 {
    let t = arith::isqrt_u64(n);
    if t * t == n {
        t
    } else {
        t + 1
    }
}

/// Sign of a + b*sqrt(r), decided exactly. Requires r > 0.
fn sign_with_sqrt(a: &BigInt, b: &BigInt, r: &BigUint) -> i32 {
    let ord = if b.is_zero() {
        return match (a.is_zero(), a.is_positive()) {
            (true, _) => 0,
            (false, true) => 1,
            (false, false) => -1,
        };
    } else if a.is_zero() {
        return if b.is_positive() { 1 } else { -1 };
    } else if a.is_positive() == b.is_positive() {
        return if a.is_positive() { 1 } else { -1 };
    } else {
        // Opposite signs: compare a^2 against b^2 r, then attribute the sign.
        let lhs = a * a;
        let rhs = b * b * BigInt::from(r.clone());
        lhs.cmp(&rhs)
    };
    match ord {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => {
            if a.is_positive() {
                1
            } else {
                -1
            }
        }
        std::cmp::Ordering::Less => {
            if a.is_positive() {
                -1
            } else {
                1
            }
        }
    }
}

/// Smallest integer t with t >= (a + b*sqrt(r))/d. Requires d > 0.
fn ceil_with_sqrt(a: &BigInt, b: &BigInt, d: &BigInt, r: &BigUint) -> i64 {
    assert!(d.is_positive(), "denominator must be positive");
    let af = a.to_f64().unwrap_or(0.0);
    let bf = b.to_f64().unwrap_or(0.0);
    let df = d.to_f64().unwrap_or(1.0);
    let est = (af + bf * r.to_f64().unwrap_or(0.0).sqrt()) / df;
    let mut t = est.clamp(-1.0e15, 1.0e15).round() as i64 - 2;
    // t satisfies the bound exactly when t*d - a >= b*sqrt(r).
    let holds = |t: i64| -> bool {
        let lhs = BigInt::from(t) * d - a;
        sign_with_sqrt(&lhs, &(-b), r) >= 0
    };
    let mut guard = 0usize;
    while !holds(t) {
        t += 1;
        guard += 1;
        assert!(guard < 10_000, "ceil scan failed to converge");
    }
    while t > i64::MIN + 1 && holds(t - 1) {
        t -= 1;
        guard += 1;
        assert!(guard < 10_000, "ceil scan failed to converge");
    }
    t
}

/// Largest integer t with t <= (a + b*sqrt(r))/d. Requires d > 0.
fn floor_with_sqrt(a: &BigInt, b: &BigInt, d: &BigInt, r: &BigUint) -> i64 {
    -ceil_with_sqrt(&(-a), &(-b), d, r)
}

fn big_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// One reported bound: the analytic and literal renderings side by side,
/// the parameters they were computed from, and an applicability checklist.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Short machine-readable bound name.
    pub name: &'static str,
    /// Which statistic the bound constrains: "d", "d_odd", or
    /// "every nonzero weight".
    pub applies_to: &'static str,
    /// Input parameters, stringified where they may exceed u64.
    pub params: serde_json::Map<String, serde_json::Value>,
    pub analytic_lower: Option<i64>,
    pub analytic_upper: Option<i64>,
    pub literal_lower: Option<i64>,
    pub literal_upper: Option<i64>,
    /// Named preconditions with their evaluated truth values.
    pub applicability: Vec<(String, bool)>,
    /// Set when the literal rendering is empty or coarser than analytic.
    pub divergence: Option<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        let opt = |v: Option<i64>| match v {
            Some(x) => serde_json::json!(x),
            None => serde_json::Value::Null,
        };
        serde_json::json!({
            "name": self.name,
            "applies_to": self.applies_to,
            "params": serde_json::Value::Object(self.params.clone()),
            "analytic": { "lower": opt(self.analytic_lower), "upper": opt(self.analytic_upper) },
            "literal": { "lower": opt(self.literal_lower), "upper": opt(self.literal_upper) },
            "applicability": self.applicability.iter().map(|(c, h)| {
                serde_json::json!({ "condition": c, "holds": h })
            }).collect::<Vec<_>>(),
            "divergence": match &self.divergence {
                Some(s) => serde_json::json!(s),
                None => serde_json::Value::Null,
            },
        })
    }
}

/// Shared parameter block for the trace-code bounds.
struct IccParams {
    q: u64,
    r: BigUint,
    big_n: BigUint,
    n_1: BigUint,
    n: u64,
}

fn icc_params(field: &Field, ext_deg: u32, big_n: u64) -> Result<IccParams> {
    if ext_deg == 0 {
        return Err(Error::InconsistentInput(
            "extension degree must be positive".into(),
        ));
    }
    if big_n == 0 {
        return Err(Error::InconsistentInput("N must be positive".into()));
    }
    let q_big = BigUint::from(field.cardinality());
    let r = q_big.pow(ext_deg);
    let rm1 = &r - 1u32;
    let nn = BigUint::from(big_n);
    if (&rm1 % &nn) != BigUint::zero() {
        return Err(Error::InconsistentInput(format!(
            "N = {} does not divide r - 1 = {}",
            big_n, rm1
        )));
    }
    let n_big = &rm1 / &nn;
    let n = n_big.to_u64().ok_or_else(|| Error::SizeLimit {
        what: "code length",
        needed: u64::MAX as u128,
        cap: u64::MAX as u128,
    })?;
    if n <= 1 {
        return Err(Error::Inapplicable(format!(
            "code length (r - 1)/N = {} leaves no room for nonzero weights",
            n
        )));
    }
    let q = field.cardinality() as u64;
    let n_1 = big_gcd(&rm1 / (q_big - 1u32), nn.clone());
    Ok(IccParams {
        q,
        r,
        big_n: nn,
        n_1,
        n,
    })
}

fn icc_param_json(p: &IccParams, ext_deg: u32) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("q".into(), serde_json::json!(p.q));
    m.insert("ext_deg".into(), serde_json::json!(ext_deg));
    m.insert("r".into(), serde_json::json!(p.r.to_string()));
    m.insert("N".into(), serde_json::json!(p.big_n.to_string()));
    m.insert("N_1".into(), serde_json::json!(p.n_1.to_string()));
    m.insert("n".into(), serde_json::json!(p.n));
    m
}

/// Interval bound on every nonzero weight of the trace code C(r, N) with
/// r = q^k: each weight w satisfies
/// (q-1)(r - (N_1-1)sqrt r)/(qN) <= w <= (q-1)(r + (N_1-1)sqrt r)/(qN).
///
/// The analytic rendering rounds the two endpoints once (ceiling, floor).
/// The literal rendering is (q-1)*ceil((r -+ (N_1-1)sqrt r)/(qN)) and
/// (q-1)*floor(...), which can cross over; see the divergence note.
pub fn icc_weight_bounds(field: &Field, ext_deg: u32, big_n: u64) -> Result<BoundReport> {
    let p = icc_params(field, ext_deg, big_n)?;
    let q = BigInt::from(p.q);
    let r_int = BigInt::from(p.r.clone());
    let qm1 = &q - BigInt::from(1);
    let coeff = BigInt::from(p.n_1.clone()) - BigInt::from(1); // N_1 - 1
    let denom = &q * BigInt::from(p.big_n.clone()); // qN

    // Analytic: endpoints of (q-1)(r -+ coeff*sqrt r)/(qN).
    let a_num = &qm1 * &r_int;
    let b_lo: BigInt = -(&qm1 * &coeff);
    let b_hi = &qm1 * &coeff;
    let analytic_lower = ceil_with_sqrt(&a_num, &b_lo, &denom, &p.r);
    let analytic_upper = floor_with_sqrt(&a_num, &b_hi, &denom, &p.r);

    // Literal: bracket the inner quotient, then scale by q - 1.
    let qm1_i = p.q as i64 - 1;
    let literal_lower = qm1_i * ceil_with_sqrt(&r_int, &(-&coeff), &denom, &p.r);
    let literal_upper = qm1_i * floor_with_sqrt(&r_int, &coeff, &denom, &p.r);

    let divergence = if literal_lower > literal_upper {
        Some(format!(
            "literal interval [{}, {}] is empty while the analytic interval is [{}, {}]",
            literal_lower, literal_upper, analytic_lower, analytic_upper
        ))
    } else if literal_lower > analytic_lower || literal_upper < analytic_upper {
        Some(format!(
            "literal interval [{}, {}] is narrower than the analytic interval [{}, {}]",
            literal_lower, literal_upper, analytic_lower, analytic_upper
        ))
    } else {
        None
    };

    Ok(BoundReport {
        name: "icc-weight-interval",
        applies_to: "every nonzero weight",
        params: icc_param_json(&p, ext_deg),
        analytic_lower: Some(analytic_lower),
        analytic_upper: Some(analytic_upper),
        literal_lower: Some(literal_lower),
        literal_upper: Some(literal_upper),
        applicability: vec![
            ("N divides r - 1".into(), true),
            ("(r - 1)/N > 1".into(), true),
        ],
        divergence,
    })
}

/// Lower bound on the minimum distance of the augmented trace code
/// (C(r, N) with the all-ones row adjoined):
/// d >= min{ (q-1) L, ((q-1)(r-1) - 1)/(qN) - (q-1)(N-1)sqrt(r)/(qN) }
/// where L is the weight-interval lower endpoint.
pub fn icc_affine_lower_bound(field: &Field, ext_deg: u32, big_n: u64) -> Result<BoundReport> {
    let p = icc_params(field, ext_deg, big_n)?;
    let q = BigInt::from(p.q);
    let r_int = BigInt::from(p.r.clone());
    let qm1 = &q - BigInt::from(1);
    let coeff = BigInt::from(p.n_1.clone()) - BigInt::from(1);
    let denom = &q * BigInt::from(p.big_n.clone());

    // Term 1: (q-1) times the weight-interval lower endpoint.
    let t1_a = &qm1 * &qm1 * &r_int;
    let t1_b: BigInt = -(&qm1 * &qm1 * &coeff);
    // Term 2: ((q-1)(r-1) - 1 - (q-1)(N-1)sqrt r)/(qN).
    let t2_a = &qm1 * (&r_int - BigInt::from(1)) - BigInt::from(1);
    let t2_b: BigInt = -(&qm1 * (BigInt::from(p.big_n.clone()) - BigInt::from(1)));

    let analytic =
        ceil_with_sqrt(&t1_a, &t1_b, &denom, &p.r).min(ceil_with_sqrt(&t2_a, &t2_b, &denom, &p.r));

    // Literal: term 1 scales the literally bracketed interval endpoint,
    // term 2 brackets its rational and irrational parts separately.
    let qm1_i = p.q as i64 - 1;
    let lit1 = qm1_i * qm1_i * ceil_with_sqrt(&r_int, &(-&coeff), &denom, &p.r);
    let lit2 = ceil_with_sqrt(&t2_a, &BigInt::zero(), &denom, &p.r)
        - floor_with_sqrt(&BigInt::zero(), &(-&t2_b), &denom, &p.r);
    let literal = lit1.min(lit2);

    let divergence = if literal != analytic {
        Some(format!(
            "literal lower bound {} differs from analytic lower bound {}",
            literal, analytic
        ))
    } else {
        None
    };

    Ok(BoundReport {
        name: "icc-affine-lower",
        applies_to: "d",
        params: icc_param_json(&p, ext_deg),
        analytic_lower: Some(analytic),
        analytic_upper: None,
        literal_lower: Some(literal),
        literal_upper: None,
        applicability: vec![
            ("N divides r - 1".into(), true),
            ("(r - 1)/N > 1".into(), true),
        ],
        divergence,
    })
}

/// Weight bounds for the codes whose check polynomial is one quartic-class
/// polynomial (without the all-ones row) or one quartic-class polynomial
/// together with x - 1 (with it). Requires prime n = 1 mod 4 with
/// ord_n(q) = (n-1)/4, q - 1 < n, and q in the class of quartic residues;
/// then the code is the trace code C(q^{(n-1)/4}, N) with N = (r-1)/n, and
/// the interval or affine bound above applies.
pub fn o4_bounds(n: u64, field: &Field, with_x_minus_1: bool) -> Result<BoundReport> {
    if !arith::is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    let q_card = field.cardinality();
    if q_card > u64::MAX as u128 {
        return Err(Error::SizeLimit {
            what: "field cardinality",
            needed: q_card,
            cap: u64::MAX as u128,
        });
    }
    let q = q_card as u64;
    if q % n == 0 {
        return Err(Error::NotCoprime { n, p: q });
    }
    let k = (n - 1) / 4;
    let ord = arith::order_mod_prime(q % n, n);
    if ord != k {
        return Err(Error::Inapplicable(format!(
            "multiplicative order of q = {} modulo n = {} is {}, required (n - 1)/4 = {}",
            q, n, ord, k
        )));
    }
    if q > n {
        return Err(Error::Inapplicable(format!(
            "q - 1 = {} is not smaller than n = {}",
            q - 1,
            n
        )));
    }
    let ctx = ClassCtx::new(n, 4)?;
    let class = cyclotomy::biquadratic_class_of(&ctx, q as u128)?;
    if class != 0 {
        return Err(Error::Inapplicable(format!(
            "q = {} lies in quartic class {} modulo n = {}, not in the residue class",
            q, class, n
        )));
    }

    // N = (r - 1)/n with r = q^{(n-1)/4}; confirm the closed form
    // N_1 = N/(q - 1) against the gcd definition.
    let r = BigUint::from(q).pow(k as u32);
    let rm1 = &r - 1u32;
    assert!(
        (&rm1 % BigUint::from(n)).is_zero(),
        "n must divide q^((n-1)/4) - 1 when ord_n(q) = (n-1)/4"
    );
    let big_n_exact = &rm1 / BigUint::from(n);
    let n_1_closed = &big_n_exact / BigUint::from(q - 1);
    let n_1_gcd = big_gcd(&rm1 / BigUint::from(q - 1), big_n_exact.clone());
    assert_eq!(
        n_1_closed, n_1_gcd,
        "closed form N/(q - 1) must agree with gcd((r-1)/(q-1), N)"
    );
    let big_n = big_n_exact.to_u64().ok_or_else(|| Error::SizeLimit {
        what: "N = (r - 1)/n",
        needed: u128::MAX,
        cap: u64::MAX as u128,
    });

    let mut report = match big_n {
        Ok(nn) => {
            if with_x_minus_1 {
                icc_affine_lower_bound(field, k as u32, nn)?
            } else {
                icc_weight_bounds(field, k as u32, nn)?
            }
        }
        Err(_) => {
            // N exceeds u64; run the shared core on big integers directly.
            return big_o4_report(n, q, k as u32, r, big_n_exact, with_x_minus_1);
        }
    };
    report.name = if with_x_minus_1 {
        "order4-affine-lower"
    } else {
        "order4-weight-interval"
    };
    report.params.insert("n".into(), serde_json::json!(n));
    report.applicability = o4_checklist(n, q, ord, k);
    Ok(report)
}

fn o4_checklist(n: u64, q: u64, ord: u64, k: u64) -> Vec<(String, bool)> {
    vec![
        (format!("n = {} is prime and n = 1 mod 4", n), true),
        (format!("ord_n(q) = {} equals (n - 1)/4 = {}", ord, k), true),
        (format!("q - 1 = {} < n = {}", q - 1, n), true),
        (format!("q = {} is a quartic residue mod n", q), true),
    ]
}

/// Bound core for quartic parameter sets whose N does not fit in u64.
fn big_o4_report(
    n: u64,
    q: u64,
    ext_deg: u32,
    r: BigUint,
    big_n: BigUint,
    with_x_minus_1: bool,
) -> Result<BoundReport> {
    let qm1 = BigInt::from(q - 1);
    let q_int = BigInt::from(q);
    let r_int = BigInt::from(r.clone());
    let n_1 = &big_n / BigUint::from(q - 1);
    let coeff = BigInt::from(n_1.clone()) - BigInt::from(1);
    let denom = &q_int * BigInt::from(big_n.clone());

    let mut params = serde_json::Map::new();
    params.insert("q".into(), serde_json::json!(q));
    params.insert("ext_deg".into(), serde_json::json!(ext_deg));
    params.insert("r".into(), serde_json::json!(r.to_string()));
    params.insert("N".into(), serde_json::json!(big_n.to_string()));
    params.insert("N_1".into(), serde_json::json!(n_1.to_string()));
    params.insert("n".into(), serde_json::json!(n));

    let ord = (n - 1) / 4;
    let checklist = o4_checklist(n, q, ord, ord);
    if with_x_minus_1 {
        let t1_a = &qm1 * &qm1 * &r_int;
        let t1_b: BigInt = -(&qm1 * &qm1 * &coeff);
        let t2_a = &qm1 * (&r_int - BigInt::from(1)) - BigInt::from(1);
        let t2_b: BigInt = -(&qm1 * (BigInt::from(big_n.clone()) - BigInt::from(1)));
        let analytic =
            ceil_with_sqrt(&t1_a, &t1_b, &denom, &r).min(ceil_with_sqrt(&t2_a, &t2_b, &denom, &r));
        let qm1_i = q as i64 - 1;
        let lit1 = qm1_i * qm1_i * ceil_with_sqrt(&r_int, &(-&coeff), &denom, &r);
        let lit2 = ceil_with_sqrt(&t2_a, &BigInt::zero(), &denom, &r)
            - floor_with_sqrt(&BigInt::zero(), &(-&t2_b), &denom, &r);
        let literal = lit1.min(lit2);
        Ok(BoundReport {
            name: "order4-affine-lower",
            applies_to: "d",
            params,
            analytic_lower: Some(analytic),
            analytic_upper: None,
            literal_lower: Some(literal),
            literal_upper: None,
            applicability: checklist,
            divergence: if literal != analytic {
                Some(format!(
                    "literal lower bound {} differs from analytic lower bound {}",
                    literal, analytic
                ))
            } else {
                None
            },
        })
    } else {
        let a_num = &qm1 * &r_int;
        let b_lo: BigInt = -(&qm1 * &coeff);
        let b_hi = &qm1 * &coeff;
        let analytic_lower = ceil_with_sqrt(&a_num, &b_lo, &denom, &r);
        let analytic_upper = floor_with_sqrt(&a_num, &b_hi, &denom, &r);
        let qm1_i = q as i64 - 1;
        let literal_lower = qm1_i * ceil_with_sqrt(&r_int, &(-&coeff), &denom, &r);
        let literal_upper = qm1_i * floor_with_sqrt(&r_int, &coeff, &denom, &r);
        Ok(BoundReport {
            name: "order4-weight-interval",
            applies_to: "every nonzero weight",
            params,
            analytic_lower: Some(analytic_lower),
            analytic_upper: Some(analytic_upper),
            literal_lower: Some(literal_lower),
            literal_upper: Some(literal_upper),
            applicability: checklist,
            divergence: if literal_lower > literal_upper {
                Some(format!(
                    "literal interval [{}, {}] is empty while the analytic interval is [{}, {}]",
                    literal_lower, literal_upper, analytic_lower, analytic_upper
                ))
            } else {
                None
            },
        })
    }
}

/// Square-root bounds attached to the structural shape of a cyclic code of
/// prime length n. Duadic shape bounds the odd-like minimum weight by
/// ceil(sqrt(n)); quadratic-residue shape bounds the minimum distance
/// itself. Other shapes carry no square-root statement.
pub fn square_root_bounds(n: u64, kind: StructureKind) -> Result<BoundReport> {
    if !arith::is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let (applies_to, name) = match kind {
        StructureKind::DuadicShape => ("d_odd", "square-root-odd-like"),
        StructureKind::QuadraticResidueShape => ("d", "square-root-qr"),
        other => {
            return Err(Error::Inapplicable(format!(
                "no square-root bound for structure kind {}",
                other.name()
            )))
        }
    };
    let bound = sqrt_ceil(n) as i64;
    let mut params = serde_json::Map::new();
    params.insert("n".into(), serde_json::json!(n));
    params.insert("kind".into(), serde_json::json!(kind.name()));
    Ok(BoundReport {
        name,
        applies_to,
        params,
        analytic_lower: Some(bound),
        analytic_upper: None,
        literal_lower: Some(bound),
        literal_upper: None,
        applicability: vec![(format!("n = {} is prime", n), true)],
        divergence: None,
    })
}

/// Numeric check of the Gaussian-period magnitude bound
/// |eta_i + 1/N| <= (N - 1)sqrt(r)/N for all periods of order N over
/// GF(r), within tolerance 1e-9. The bound is attained with equality at
/// (r, N) = (5, 2), so no inner rounding is applied.
pub fn gaussian_period_bound_check(r: u64, order: u64) -> Result<bool> {
    let report = cyclotomy::gaussian_period_report(r, order)?;
    Ok(report.within_bound())
}

/// Exact weight data of one trace code C(r, N) and its augmented variant,
/// computed from a full trace table of GF(r). Intended for small r.
#[derive(Debug, Clone)]
pub struct IccExact {
    pub q: u64,
    pub ext_deg: u32,
    pub big_n: u64,
    pub n: u64,
    /// Distinct nonzero-codeword weights of C(r, N), sorted.
    pub weights: Vec<u64>,
    /// Minimum distance of C(r, N).
    pub d: u64,
    /// Minimum distance of the augmented code.
    pub affine_d: u64,
}

/// Cap on r for exact trace-table weight profiles.
pub const ICC_EXACT_CAP: u128 = 1 << 20;

/// Compute the exact weight profile of C(r, N) by tabulating the trace of
/// every power of a primitive element and striding through the table once
/// per residue class of exponents modulo N.
pub fn icc_exact_weights(field: &Field, ext_deg: u32, big_n: u64) -> Result<IccExact> {
    let p = icc_params(field, ext_deg, big_n)?;
    let ext = field.extend(ext_deg)?;
    let r_card = ext.cardinality();
    if r_card > ICC_EXACT_CAP {
        return Err(Error::SizeLimit {
            what: "trace table size",
            needed: r_card,
            cap: ICC_EXACT_CAP,
        });
    }
    let r = r_card as u64;
    let n = p.n;
    let q = p.q;

    // tval[e] = Tr(alpha^e) down to the base field, as a packed value < q.
    let alpha = ext.primitive();
    let mut tval = vec![0u32; (r - 1) as usize];
    let mut x = ext.one();
    for slot in tval.iter_mut() {
        *slot = ext.trace_to(field, x)? as u32;
        x = ext.mul(x, alpha);
    }

    let mut counts = vec![0u32; q as usize];
    let mut touched: Vec<u32> = Vec::with_capacity(n as usize);
    let mut weights = std::collections::BTreeSet::new();
    let mut affine_d = n; // the a = 0, b != 0 words have weight n
    let rm1 = r - 1;
    for j in 0..big_n {
        let mut idx = j;
        let mut max_count = 0u32;
        for _ in 0..n {
            let v = tval[idx as usize];
            if counts[v as usize] == 0 {
                touched.push(v);
            }
            counts[v as usize] += 1;
            if counts[v as usize] > max_count {
                max_count = counts[v as usize];
            }
            idx += big_n;
            if idx >= rm1 {
                idx -= rm1;
            }
        }
        let zeros = counts[0] as u64;
        weights.insert(n - zeros);
        affine_d = affine_d.min(n - max_count as u64);
        for &v in &touched {
            counts[v as usize] = 0;
        }
        touched.clear();
    }

    let weights: Vec<u64> = weights.into_iter().collect();
    let d = *weights
        .first()
        .expect("a code with n > 1 has at least one nonzero weight");
    Ok(IccExact {
        q,
        ext_deg,
        big_n,
        n,
        weights,
        d,
        affine_d,
    })
}

/// Outcome of an exhaustive sweep over trace codes with r below a cap:
/// every exact weight is tested against the analytic interval, every exact
/// augmented minimum distance against the affine lower bound, and literal
/// renderings that cross over or exclude a realized weight are logged.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: u64,
    pub failures: Vec<String>,
    pub divergences: Vec<String>,
}

/// Sweep all C(r, N) with prime-power r = q^k < r_cap, N | r - 1, and
/// length > 1, checking exact weights against the analytic bounds.
pub fn icc_sweep(r_cap: u64) -> Result<SweepOutcome> {
    use rayon::prelude::*;
    let mut bases: Vec<(u64, u32)> = Vec::new();
    for q in 2..r_cap {
        if arith::prime_power_split(q).is_some() {
            let mut k = 1u32;
            let mut r = q;
            while r < r_cap {
                bases.push((q, k));
                k += 1;
                r = match r.checked_mul(q) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
    }

    let per_base: Vec<Result<(u64, Vec<String>, Vec<String>)>> = bases
        .par_iter()
        .map(|&(q, k)| sweep_one_base(q, k))
        .collect();

    let mut outcome = SweepOutcome {
        rows: 0,
        failures: Vec::new(),
        divergences: Vec::new(),
    };
    for res in per_base {
        let (rows, fails, divs) = res?;
        outcome.rows += rows;
        outcome.failures.extend(fails);
        outcome.divergences.extend(divs);
    }
    Ok(outcome)
}

fn sweep_one_base(q: u64, ext_deg: u32) -> Result<(u64, Vec<String>, Vec<String>)> {
    let (p, m) = arith::prime_power_split(q).expect("sweep base must be a prime power");
    let field = Field::galois(p, m)?;
    let r = q.pow(ext_deg);
    let mut rows = 0u64;
    let mut failures = Vec::new();
    let mut divergences = Vec::new();
    let mut divisors: Vec<u64> = Vec::new();
    let rm1 = r - 1;
    let mut d = 1u64;
    while d * d <= rm1 {
        if rm1 % d == 0 {
            divisors.push(d);
            if d != rm1 / d {
                divisors.push(rm1 / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();

    for big_n in divisors {
        if rm1 / big_n <= 1 {
            continue;
        }
        rows += 1;
        let tag = format!("C({}, {}) over GF({})", r, big_n, q);
        let exact = icc_exact_weights(&field, ext_deg, big_n)?;
        let interval = icc_weight_bounds(&field, ext_deg, big_n)?;
        let lo = interval
            .analytic_lower
            .expect("interval has a lower endpoint");
        let hi = interval
            .analytic_upper
            .expect("interval has an upper endpoint");
        let w_min = *exact.weights.first().expect("at least one nonzero weight") as i64;
        let w_max = *exact.weights.last().expect("at least one nonzero weight") as i64;
        if w_min < lo || w_max > hi {
            failures.push(format!(
                "{}: weights [{}, {}] escape the analytic interval [{}, {}]",
                tag, w_min, w_max, lo, hi
            ));
        }
        let affine = icc_affine_lower_bound(&field, ext_deg, big_n)?;
        let abound = affine.analytic_lower.expect("affine bound has a value");
        if (exact.affine_d as i64) < abound {
            failures.push(format!(
                "{}: augmented minimum distance {} is below the analytic bound {}",
                tag, exact.affine_d, abound
            ));
        }
        let lit_lo = interval.literal_lower.expect("literal lower exists");
        let lit_hi = interval.literal_upper.expect("literal upper exists");
        if lit_lo > lit_hi || w_min < lit_lo || w_max > lit_hi {
            divergences.push(format!(
                "{}: literal interval [{}, {}] vs analytic [{}, {}], exact weights span [{}, {}]",
                tag, lit_lo, lit_hi, lo, hi, w_min, w_max
            ));
        }
        if let Some(lit_a) = affine.literal_lower {
            if lit_a != abound {
                divergences.push(format!(
                    "{} augmented: literal lower {} vs analytic lower {}, exact d {}",
                    tag, lit_a, abound, exact.affine_d
                ));
            }
        }
    }
    Ok((rows, failures, divergences))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_interval_for_gf27_classes_of_two_is_tight() {
        let f3 = Field::prime(3).unwrap();
        let rep = icc_weight_bounds(&f3, 3, 2).unwrap();
        assert_eq!(rep.analytic_lower, Some(9), "analytic lower endpoint");
        assert_eq!(rep.analytic_upper, Some(9), "analytic upper endpoint");
        assert_eq!(rep.literal_lower, Some(10), "literal lower endpoint");
        assert_eq!(rep.literal_upper, Some(8), "literal upper endpoint");
        let note = rep
            .divergence
            .expect("empty literal interval must be flagged");
        assert!(
            note.contains("[10, 8]"),
            "note names the literal interval: {}",
            note
        );
        assert_eq!(rep.params["N_1"], "1", "N_1 = gcd(13, 2) = 1");
    }

    #[test]
    fn affine_lower_bound_for_gf27_classes_of_two_is_seven() {
        let f3 = Field::prime(3).unwrap();
        let rep = icc_affine_lower_bound(&f3, 3, 2).unwrap();
        assert_eq!(rep.analytic_lower, Some(7), "analytic affine lower bound");
        assert_eq!(rep.literal_lower, Some(8), "literal affine lower bound");
        assert!(
            rep.divergence.is_some(),
            "literal vs analytic gap is flagged"
        );
    }

    #[test]
    fn quartic_bounds_for_n13_over_gf3_reduce_to_the_tight_interval() {
        let f3 = Field::prime(3).unwrap();
        let rep = o4_bounds(13, &f3, false).unwrap();
        assert_eq!(rep.name, "order4-weight-interval");
        assert_eq!(rep.analytic_lower, Some(9));
        assert_eq!(rep.analytic_upper, Some(9));
        assert_eq!(rep.params["N"], "2", "N = (27 - 1)/13");
        assert_eq!(rep.params["N_1"], "1");

        let affine = o4_bounds(13, &f3, true).unwrap();
        assert_eq!(affine.name, "order4-affine-lower");
        assert_eq!(affine.analytic_lower, Some(7));
    }

    #[test]
    fn quartic_bounds_reject_gf5_at_n13_by_order() {
        let f5 = Field::prime(5).unwrap();
        let err = o4_bounds(13, &f5, false).unwrap_err();
        match err {
            Error::Inapplicable(msg) => {
                assert!(
                    msg.contains("order") && msg.contains("(n - 1)/4"),
                    "message names the order condition: {}",
                    msg
                );
            }
            other => panic!("expected Inapplicable, got {}", other),
        }
    }

    #[test]
    fn quartic_bounds_for_n29_over_gf7_stay_ordered() {
        let f7 = Field::prime(7).unwrap();
        let rep = o4_bounds(29, &f7, false).unwrap();
        let lo = rep.analytic_lower.unwrap();
        let hi = rep.analytic_upper.unwrap();
        assert!(lo <= hi, "interval endpoints are ordered: [{}, {}]", lo, hi);
        assert!(
            lo < 0,
            "the width term dominates here, lower endpoint is negative"
        );
        assert!(
            hi > 29,
            "upper endpoint exceeds the length, bound is weak but valid"
        );
    }

    #[test]
    fn quartic_bounds_use_big_integers_when_n_is_large() {
        let f2 = Field::prime(2).unwrap();
        let rep = o4_bounds(353, &f2, false).unwrap();
        let lo = rep.analytic_lower.unwrap();
        let hi = rep.analytic_upper.unwrap();
        assert!(lo <= hi, "big-integer path keeps endpoints ordered");
        let r = rep.params["r"].as_str().unwrap();
        assert!(
            r.len() > 25,
            "r = 2^88 prints with full precision, got {}",
            r
        );
        let big_n = rep.params["N"].as_str().unwrap();
        assert!(
            big_n.len() > 20,
            "N = (2^88 - 1)/353 exceeds u64, got {}",
            big_n
        );
    }

    #[test]
    fn square_root_bounds_follow_the_structure_kind() {
        let duadic = square_root_bounds(73, StructureKind::DuadicShape).unwrap();
        assert_eq!(duadic.analytic_lower, Some(9), "ceil(sqrt(73)) = 9");
        assert_eq!(duadic.applies_to, "d_odd");

        let qr = square_root_bounds(113, StructureKind::QuadraticResidueShape).unwrap();
        assert_eq!(qr.analytic_lower, Some(11), "ceil(sqrt(113)) = 11");
        assert_eq!(qr.applies_to, "d");

        let err = square_root_bounds(73, StructureKind::Other).unwrap_err();
        assert!(matches!(err, Error::Inapplicable(_)));
    }

    #[test]
    fn period_bound_check_accepts_the_equality_case() {
        assert!(
            gaussian_period_bound_check(5, 2).unwrap(),
            "r = 5, N = 2 attains the bound"
        );
        assert!(gaussian_period_bound_check(13, 4).unwrap());
        assert!(gaussian_period_bound_check(17, 8).unwrap());
        assert!(gaussian_period_bound_check(64, 7).unwrap());
    }

    #[test]
    fn exact_weights_of_gf27_classes_of_two_are_equidistant() {
        let f3 = Field::prime(3).unwrap();
        let exact = icc_exact_weights(&f3, 3, 2).unwrap();
        assert_eq!(exact.n, 13);
        assert_eq!(exact.weights, vec![9], "every nonzero word has weight 9");
        assert_eq!(exact.d, 9);
        assert_eq!(exact.affine_d, 7, "adding constants drops the minimum to 7");
    }

    #[test]
    fn exact_weights_handle_base_degree_one() {
        let f7 = Field::prime(7).unwrap();
        let exact = icc_exact_weights(&f7, 1, 2).unwrap();
        assert_eq!(exact.n, 3, "n = (7 - 1)/2");
        assert!(exact.d >= 1 && exact.d <= 3);
    }

    #[test]
    fn small_sweep_finds_no_bound_violations() {
        let outcome = icc_sweep(512).unwrap();
        assert!(
            outcome.rows > 100,
            "sweep covers many codes, got {}",
            outcome.rows
        );
        assert!(
            outcome.failures.is_empty(),
            "analytic bounds hold everywhere, first failure: {:?}",
            outcome.failures.first()
        );
        let hit = outcome
            .divergences
            .iter()
            .any(|s| s.contains("C(27, 2) over GF(3)") && s.contains("[10, 8]"));
        assert!(hit, "the empty literal interval at C(27, 2) is logged");
    }

    #[test]
    fn directed_rounding_matches_integer_arithmetic_on_perfect_squares() {
        // (4 + 2*sqrt(9))/5 = 2 exactly.
        let ten = ceil_with_sqrt(
            &BigInt::from(4),
            &BigInt::from(2),
            &BigInt::from(5),
            &BigUint::from(9u32),
        );
        assert_eq!(ten, 2);
        let down = floor_with_sqrt(
            &BigInt::from(4),
            &BigInt::from(2),
            &BigInt::from(5),
            &BigUint::from(9u32),
        );
        assert_eq!(down, 2, "floor and ceiling agree on an exact integer value");
        // (1 - sqrt(2))/1: floor is -1, ceiling is 0.
        let c = ceil_with_sqrt(
            &BigInt::from(1),
            &BigInt::from(-1),
            &BigInt::from(1),
            &BigUint::from(2u32),
        );
        assert_eq!(c, 0);
        let f = floor_with_sqrt(
            &BigInt::from(1),
            &BigInt::from(-1),
            &BigInt::from(1),
            &BigUint::from(2u32),
        );
        assert_eq!(f, -1);
    }
}
