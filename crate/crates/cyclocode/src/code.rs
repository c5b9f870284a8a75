//! Cyclic codes of prime length: construction from sequences, the four
//! class polynomials Omega_i, irreducible cyclic codes built by trace,
//! systematic encoding, and structural classification of the check
//! polynomial.

use serde_json::json;

use crate::arith;
use crate::cyclotomy::{biquadratic_class_of, ClassCtx};
use crate::error::{Error, Result};
use crate::extring::{cyclotomic_cosets, cyclotomic_factors, QuotientRing};
use crate::field::Field;
use crate::poly::Poly;
use crate::seq::{analyze, SequenceSpec};

/// A cyclic code of length n over GF(q), held as its monic generator
/// polynomial g with g | x^n - 1.
pub struct CyclicCode {
    n: u64,
    field: Field,
    generator: Poly,
    k: usize,
}

impl CyclicCode {
    pub fn new(field: &Field, n: u64, generator: Poly) -> Result<CyclicCode> {
        if n == 0 {
            return Err(Error::InconsistentInput("length must be positive".into()));
        }
        if n % field.characteristic() == 0 {
            return Err(Error::NotCoprime {
                n,
                p: field.characteristic(),
            });
        }
        let g = generator.make_monic()?;
        let xn1 = Poly::x_n_minus_1(field, n as usize);
        let (_, r) = xn1.divrem(&g)?;
        if !r.is_zero() {
            return Err(Error::InconsistentInput(format!(
                "generator {g} does not divide x^{n} - 1"
            )));
        }
        let k = n as usize - g.degree().unwrap_or(0);
        Ok(CyclicCode {
            n,
            field: field.clone(),
            generator: g,
            k,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// h = (x^n - 1)/g, the monic check polynomial.
    pub fn check_poly(&self) -> Result<Poly> {
        Poly::x_n_minus_1(&self.field, self.n as usize).exact_div(&self.generator)
    }

    /// Coefficients of message * g, padded to length n.
    pub fn encode(&self, message: &Poly) -> Result<Vec<u64>> {
        if let Some(deg) = message.degree() {
            if deg >= self.k {
                return Err(Error::DegreeTooHigh { deg, k: self.k });
            }
        }
        let word = message.mul(&self.generator)?;
        let mut out = word.coeffs().to_vec();
        out.resize(self.n as usize, 0);
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "q": self.field.cardinality() as u64,
            "generator": self.generator.to_string(),
            "k": self.k,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<CyclicCode> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("code JSON needs a numeric n".into()))?;
        let q = v["q"]
            .as_u64()
            .ok_or_else(|| Error::Parse("code JSON needs a numeric q".into()))?;
        let gen_str = v["generator"]
            .as_str()
            .ok_or_else(|| Error::Parse("code JSON needs a generator string".into()))?;
        let field = Field::of_cardinality(q)?;
        let generator = Poly::parse(&field, gen_str)?;
        let code = CyclicCode::new(&field, n, generator)?;
        if let Some(k) = v["k"].as_u64() {
            if k as usize != code.k {
                return Err(Error::InconsistentInput(format!(
                    "declared dimension {k} but generator implies {}",
                    code.k
                )));
            }
        }
        Ok(code)
    }
}

/// The code defined by a sequence: generator = the sequence's minimal
/// polynomial, dimension n minus the linear span.
pub fn code_from_sequence(spec: &SequenceSpec) -> Result<CyclicCode> {
    let analysis = analyze(spec)?;
    CyclicCode::new(&spec.field, spec.n, analysis.minimal_poly)
}

/// The four class polynomials Omega_i over GF(q), each the product of
/// (x - eta^j) over the order-four class C_i, together with the class
/// period sums eta_i as elements of the splitting factor's quotient ring.
///
/// The labeling is rotated, when possible, so that eta_0 + eta_2 = 0;
/// such a rotation exists exactly when the characteristic divides
/// (n - 1)/4, and `normalized` records whether it was applied.
pub struct OmegaSet {
    pub n: u64,
    /// polys[i] is Omega_i under the final labeling.
    pub polys: [Poly; 4],
    /// eta[i] is the period sum over C_i, reduced mod the canonical
    /// splitting factor; constants appear as constant polynomials.
    pub eta: [Poly; 4],
    /// Whether the final labeling satisfies eta_0 + eta_2 = 0.
    pub normalized: bool,
    /// Label rotation applied relative to the canonical root (0 or 1).
    pub shift: usize,
}

impl OmegaSet {
    pub fn require_normalized(&self) -> Result<&OmegaSet> {
        if self.normalized {
            Ok(self)
        } else {
            Err(Error::NormalizationUnavailable {
                n: self.n,
                q: self.polys[0].field().cardinality(),
            })
        }
    }
}

pub fn omega_polynomials(field: &Field, n: u64) -> Result<OmegaSet> {
    if !arith::is_prime(n) || n % 4 != 1 {
        return Err(Error::NotOneModFour(n));
    }
    let ctx = ClassCtx::new(n, 4)?;
    if biquadratic_class_of(&ctx, field.cardinality())? != 0 {
        return Err(Error::NotBiquadraticResidue {
            n,
            q: field.cardinality(),
        });
    }
    let factors = cyclotomic_factors(field, n)?;
    let ring = QuotientRing::new(factors[0].clone())?;
    let x = ring.x();
    let mut pows = Vec::with_capacity(n as usize);
    pows.push(Poly::one(field));
    for _ in 1..n {
        pows.push(ring.mul(pows.last().expect("nonempty"), &x)?);
    }
    let q_mod_n = (field.cardinality() % n as u128) as u64;
    let cosets = cyclotomic_cosets(n, q_mod_n)?;
    let mut products: [Poly; 4] = std::array::from_fn(|_| Poly::one(field));
    for f in &factors {
        let mut class = None;
        for coset in &cosets {
            let rep = coset[0] as usize;
            if eval_at_ring_element(&ring, f, &pows[rep])?.is_zero() {
                class = Some(ctx.class_of(rep as u64).expect("nonzero residue"));
                break;
            }
        }
        let class = class.ok_or_else(|| {
            Error::InconsistentInput("factor with no root among the unity powers".into())
        })?;
        products[class] = products[class].mul(f)?;
    }
    let expected = ((n - 1) / 4) as usize;
    for p in &products {
        if p.degree() != Some(expected) {
            return Err(Error::InconsistentInput(format!(
                "class polynomial of degree {:?}, expected {expected}",
                p.degree()
            )));
        }
    }
    let mut eta: [Poly; 4] = std::array::from_fn(|_| Poly::zero(field));
    for j in 1..n as usize {
        let class = ctx.class_of(j as u64).expect("nonzero residue");
        eta[class] = eta[class].add(&pows[j])?;
    }
    let theta02 = eta[0].add(&eta[2])?;
    let minus_one = Poly::from_coeffs(field, vec![field.neg(1)]);
    let (normalized, shift) = if theta02.is_zero() {
        (true, 0)
    } else if theta02 == minus_one {
        (true, 1)
    } else {
        (false, 0)
    };
    let divides = ((n - 1) / 4) % field.characteristic() as u64 == 0;
    if divides != normalized {
        return Err(Error::InconsistentInput(format!(
            "period sum normalization disagrees with the divisibility criterion at n = {n}"
        )));
    }
    let rotate_poly =
        |arr: &[Poly; 4]| -> [Poly; 4] { std::array::from_fn(|i| arr[(i + shift) % 4].clone()) };
    Ok(OmegaSet {
        n,
        polys: rotate_poly(&products),
        eta: rotate_poly(&eta),
        normalized,
        shift,
    })
}

/// Horner evaluation of a GF(q)[x] polynomial at an element of the
/// quotient ring.
fn eval_at_ring_element(ring: &QuotientRing, p: &Poly, at: &Poly) -> Result<Poly> {
    let field = p.field();
    let mut acc = Poly::zero(field);
    for &c in p.coeffs().iter().rev() {
        acc = ring.mul(&acc, at)?;
        acc = acc.add(&Poly::from_coeffs(field, vec![c]))?;
    }
    Ok(acc)
}

/// The irreducible cyclic code of length n = (q^k - 1)/N over GF(q),
/// built by evaluating the trace of a theta^i over a spanning set of a,
/// with theta = alpha^N; `with_b` adds the constant b to every position,
/// enlarging the code by the all-ones word.
pub fn irreducible_cyclic_code(
    field: &Field,
    k: u32,
    big_n: u64,
    with_b: bool,
) -> Result<CyclicCode> {
    let ext = field.extend(k)?;
    let r = ext.cardinality();
    if big_n == 0 || (r - 1) % big_n as u128 != 0 {
        return Err(Error::InconsistentInput(format!(
            "N = {big_n} does not divide r - 1 = {}",
            r - 1
        )));
    }
    let n = ((r - 1) / big_n as u128) as u64;
    if n <= 1 {
        return Err(Error::Inapplicable(format!(
            "N = {big_n} leaves length {n}; the code needs length above 1"
        )));
    }
    let alpha = ext.primitive();
    let theta = ext.pow(alpha, big_n);
    let mut generators = vec![Poly::x_n_minus_1(field, n as usize)];
    for j in 0..k as u64 {
        let a = ext.pow(alpha, j);
        let mut coeffs = Vec::with_capacity(n as usize);
        let mut cur = a;
        for _ in 0..n {
            coeffs.push(ext.trace_to(field, cur)?);
            cur = ext.mul(cur, theta);
        }
        generators.push(Poly::from_coeffs(field, coeffs));
    }
    if with_b {
        generators.push(Poly::from_coeffs(field, vec![1; n as usize]));
    }
    let mut g = generators[0].clone();
    for p in &generators[1..] {
        if !p.is_zero() {
            g = g.gcd(p)?;
        }
    }
    CyclicCode::new(field, n, g)
}

/// Shape of a check polynomial as a product drawn from
/// {(x - 1), Omega_0, ..., Omega_3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// Check polynomial exactly (x - 1): the repetition code.
    TrivialComplement,
    /// Check contains the pair {Omega_0, Omega_2} or {Omega_1, Omega_3}.
    QuadraticResidueShape,
    /// Check contains some other pair of class polynomials.
    DuadicShape,
    /// Check is a single class polynomial.
    IrreducibleCheck,
    /// Check is (x - 1) times a single class polynomial.
    IrreduciblePlusOneCheck,
    Other,
}

impl StructureKind {
    pub fn name(&self) -> &'static str {
        match self {
            StructureKind::TrivialComplement => "trivial-(x-1)-complement",
            StructureKind::QuadraticResidueShape => "quadratic-residue-shape",
            StructureKind::DuadicShape => "duadic-shape",
            StructureKind::IrreducibleCheck => "irreducible-check",
            StructureKind::IrreduciblePlusOneCheck => "irreducible-plus-one-check",
            StructureKind::Other => "other",
        }
    }
}

/// Classification of a code's check polynomial against the class
/// polynomial factors.
pub struct StructureTag {
    pub kind: StructureKind,
    /// Factor labels present in the check polynomial, e.g. "x - 1",
    /// "Omega_2".
    pub factors: Vec<String>,
    /// Indices of the class polynomials present.
    pub classes: Vec<usize>,
    pub has_x_minus_1: bool,
}

pub fn classify_structure(code: &CyclicCode) -> Result<StructureTag> {
    let field = code.field();
    let omega = omega_polynomials(field, code.n())?;
    let mut h = code.check_poly()?;
    let x_minus_1 = Poly::from_coeffs(field, vec![field.neg(1), 1]);
    let mut has_x_minus_1 = false;
    let mut factors = Vec::new();
    if h.rem(&x_minus_1)?.is_zero() {
        h = h.exact_div(&x_minus_1)?;
        has_x_minus_1 = true;
        factors.push("x - 1".to_string());
    }
    let mut classes = Vec::new();
    for (i, omega_i) in omega.polys.iter().enumerate() {
        if h.degree() >= omega_i.degree() && h.rem(omega_i)?.is_zero() {
            h = h.exact_div(omega_i)?;
            classes.push(i);
            factors.push(format!("Omega_{i}"));
        }
    }
    if h.degree() != Some(0) {
        return Err(Error::NotFactorable(format!(
            "residual factor {h} of the check polynomial at n = {}",
            code.n()
        )));
    }
    let kind = match (has_x_minus_1, classes.as_slice()) {
        (true, []) => StructureKind::TrivialComplement,
        (_, [_]) if has_x_minus_1 => StructureKind::IrreduciblePlusOneCheck,
        (_, [_]) => StructureKind::IrreducibleCheck,
        (_, [a, b]) => {
            if (*a, *b) == (0, 2) || (*a, *b) == (1, 3) {
                StructureKind::QuadraticResidueShape
            } else {
                StructureKind::DuadicShape
            }
        }
        _ => StructureKind::Other,
    };
    Ok(StructureTag {
        kind,
        factors,
        classes,
        has_x_minus_1,
    })
}
