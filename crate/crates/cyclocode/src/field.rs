//! Finite field tower over small primes with packed element values.
//!
//! An element of GF(p^m) is a single `u64`: the value `sum_i c_i p^i` of its
//! coefficient vector in the power basis x^0, x^1, ... of the canonical
//! modulus. Values therefore run over exactly `0..p^m`, addition of
//! constants matches integer residues, and the element `a` (the class of x)
//! has value `p`.
//!
//! Determinism contract: the modulus of GF(p^m) is the first monic
//! irreducible of degree m in coefficient order with low-degree
//! coefficients varying fastest, and the generator is the first element in
//! value order with full multiplicative order. Two `Field` handles with the
//! same characteristic and degree are interchangeable.

use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{Error, Result};

/// Largest permitted field cardinality (element values must pack in 40 bits).
pub const MAX_CARDINALITY: u128 = 1 << 40;

/// Largest cardinality for which exp/log tables may be built.
pub const TABLE_CAP: u128 = 1 << 24;

/// Largest characteristic permitted for extension fields (digit packing).
const MAX_EXT_CHARACTERISTIC: u64 = 1 << 16;

struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct FieldCtx {
    p: u64,
    deg: usize,
    cardinality: u128,
    /// Monic modulus coefficients over GF(p), constant first; empty for prime fields.
    modulus: Vec<u64>,
    /// Bitmask form of the modulus when p = 2, including the leading bit.
    modulus_mask: u64,
    primitive: u64,
    /// Distinct prime factors of cardinality - 1.
    order_factors: Vec<u64>,
    tables: OnceLock<LogTables>,
    /// Cached images in this field of the canonical generator of GF(p^d), keyed by d.
    sub_roots: Mutex<Vec<(usize, u64)>>,
}

/// Cheap-to-clone handle to a finite field GF(p^m).
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.deg == other.0.deg
    }
}
impl Eq for Field {}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.deg == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.deg)
        }
    }
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::galois(p, 1)
    }

    /// The canonical field with exactly `q` elements, for prime-power `q`.
    pub fn of_cardinality(q: u64) -> Result<Field> {
        let (p, m) = arith::prime_power_split(q)
            .ok_or_else(|| Error::InconsistentInput(format!("{q} is not a prime power")))?;
        Self::galois(p, m)
    }

    /// The field GF(p^m) with the canonical modulus and generator.
    pub fn galois(p: u64, m: u32) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InconsistentInput(
                "extension degree must be positive".into(),
            ));
        }
        let mut cardinality = 1u128;
        for _ in 0..m {
            cardinality = cardinality.checked_mul(p as u128).unwrap_or(u128::MAX);
            if cardinality > MAX_CARDINALITY {
                return Err(Error::SizeLimit {
                    what: "field cardinality",
                    needed: cardinality,
                    cap: MAX_CARDINALITY,
                });
            }
        }
        let deg = m as usize;
        if deg >= 2 && p > MAX_EXT_CHARACTERISTIC {
            return Err(Error::SizeLimit {
                what: "extension characteristic",
                needed: p as u128,
                cap: MAX_EXT_CHARACTERISTIC as u128,
            });
        }
        let modulus = if deg == 1 {
            Vec::new()
        } else {
            first_irreducible(p, deg)
        };
        let mut modulus_mask = 0u64;
        if p == 2 && deg >= 2 {
            for (i, &c) in modulus.iter().enumerate() {
                if c != 0 {
                    modulus_mask |= 1 << i;
                }
            }
        }
        let order_factors = arith::distinct_prime_factors((cardinality - 1) as u64);
        let ctx = FieldCtx {
            p,
            deg,
            cardinality,
            modulus,
            modulus_mask,
            primitive: 0,
            order_factors,
            tables: OnceLock::new(),
            sub_roots: Mutex::new(Vec::new()),
        };
        let mut field = Field(Arc::new(ctx));
        let primitive = field.find_primitive();
        Arc::get_mut(&mut field.0)
            .expect("sole owner during construction")
            .primitive = primitive;
        if field.0.cardinality <= 1 << 16 {
            field.build_log_tables()?;
        }
        Ok(field)
    }

    /// The extension GF(q^k) of this field GF(q), sharing the canonical
    /// construction over the prime subfield.
    pub fn extend(&self, k: u32) -> Result<Field> {
        if k == 0 {
            return Err(Error::InconsistentInput(
                "extension degree must be positive".into(),
            ));
        }
        Self::galois(self.0.p, self.0.deg as u32 * k)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.deg
    }

    pub fn cardinality(&self) -> u128 {
        self.0.cardinality
    }

    /// The canonical generator of the multiplicative group.
    pub fn primitive(&self) -> u64 {
        self.0.primitive
    }

    /// Monic modulus coefficients over GF(p), constant term first.
    /// Empty for prime fields.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The modulus rendered as a polynomial in x, e.g. "x^2 + x + 1".
    /// Prime fields report "x" (the quotient by x is the field itself).
    pub fn modulus_string(&self) -> String {
        if self.0.deg == 1 {
            "x".to_string()
        } else {
            fmt_prime_poly(&self.0.modulus, "x")
        }
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// The constant element with integer value `i mod p`.
    pub fn from_int(&self, i: u64) -> u64 {
        i % self.0.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.deg == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut mul = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.0.deg {
            let s = (a % p + b % p) % p;
            out += s * mul;
            mul *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.deg == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut mul = 1u64;
        let mut a = a;
        for _ in 0..self.0.deg {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * mul;
            mul *= p;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = self.0.tables.get() {
            let m = (self.0.cardinality - 1) as u64;
            let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
            return t.exp[(s % m) as usize];
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.deg == 1 {
            return arith::mul_mod(a, b, p);
        }
        if p == 2 {
            let deg = self.0.deg;
            let top = 1u64 << deg;
            let mask = self.0.modulus_mask;
            let mut acc = 0u64;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a & top != 0 {
                    a ^= mask;
                }
            }
            return acc;
        }
        let deg = self.0.deg;
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut conv = [0u64; 128];
        for i in 0..deg {
            if da[i] == 0 {
                continue;
            }
            for j in 0..deg {
                conv[i + j] += da[i] * db[j];
            }
        }
        for i in (deg..2 * deg - 1).rev() {
            let c = conv[i] % p;
            if c != 0 {
                for j in 0..deg {
                    let m = self.0.modulus[j];
                    if m != 0 {
                        conv[i - deg + j] += c * (p - m);
                    }
                }
            }
            conv[i] = 0;
        }
        let mut out = 0u64;
        let mut mulw = 1u64;
        for item in conv.iter().take(deg) {
            out += (item % p) * mulw;
            mulw *= p;
        }
        out
    }

    /// Raises `a` to the power `e`.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, (self.0.cardinality - 2) as u64))
    }

    /// The multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        let group = (self.0.cardinality - 1) as u64;
        let mut ord = group;
        for &f in &self.0.order_factors {
            while ord % f == 0 && self.pow(a, ord / f) == 1 {
                ord /= f;
            }
        }
        Ok(ord)
    }

    fn find_primitive(&self) -> u64 {
        let group = (self.0.cardinality - 1) as u64;
        if group == 1 {
            return 1;
        }
        let mut v = 2u64;
        loop {
            let mut full = true;
            for &f in &self.0.order_factors {
                if self.pow(v, group / f) == 1 {
                    full = false;
                    break;
                }
            }
            if full {
                return v;
            }
            v += 1;
        }
    }

    /// Builds exp/log tables so multiplication becomes two lookups.
    /// Errors when the cardinality exceeds the table cap.
    pub fn build_log_tables(&self) -> Result<()> {
        if self.0.cardinality > TABLE_CAP {
            return Err(Error::SizeLimit {
                what: "log tables",
                needed: self.0.cardinality,
                cap: TABLE_CAP,
            });
        }
        if self.0.tables.get().is_some() {
            return Ok(());
        }
        let card = self.0.cardinality as usize;
        let mut exp = Vec::with_capacity(card - 1);
        let mut log = vec![u32::MAX; card];
        let mut acc = 1u64;
        for i in 0..card - 1 {
            exp.push(acc);
            log[acc as usize] = i as u32;
            acc = self.mul_generic(acc, self.0.primitive);
        }
        let _ = self.0.tables.set(LogTables { exp, log });
        Ok(())
    }

    fn unpack(&self, mut v: u64, out: &mut [u64; 64]) {
        let p = self.0.p;
        for item in out.iter_mut().take(self.0.deg) {
            *item = v % p;
            v /= p;
        }
    }

    /// Coefficients of the element in the power basis, constant first.
    pub fn element_digits(&self, v: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.0.deg];
        let p = self.0.p;
        let mut v = v;
        for item in out.iter_mut() {
            *item = v % p;
            v /= p;
        }
        out
    }

    /// Image in this field of the canonical generator of GF(p^d);
    /// `d` must divide this field's degree.
    fn subfield_generator_image(&self, sub: &Field) -> Result<u64> {
        if sub.0.p != self.0.p || self.0.deg % sub.0.deg != 0 {
            return Err(Error::NotSubfield {
                sub: sub.0.cardinality,
                sup: self.0.cardinality,
            });
        }
        if sub.0.deg == self.0.deg {
            return Ok(self.0.p);
        }
        {
            let cache = self.0.sub_roots.lock().unwrap();
            if let Some(&(_, r)) = cache.iter().find(|(d, _)| *d == sub.0.deg) {
                return Ok(r);
            }
        }
        let qsub = sub.0.cardinality;
        let step = ((self.0.cardinality - 1) / (qsub - 1)) as u64;
        let beta = self.pow(self.0.primitive, step);
        let mut cand = 1u64;
        for _ in 0..(qsub - 1) {
            let mut acc = 0u64;
            for &c in sub.0.modulus.iter().rev() {
                acc = self.add(self.mul(acc, cand), c);
            }
            if acc == 0 {
                let mut cache = self.0.sub_roots.lock().unwrap();
                cache.push((sub.0.deg, cand));
                return Ok(cand);
            }
            cand = self.mul(cand, beta);
        }
        Err(Error::NotSubfield {
            sub: sub.0.cardinality,
            sup: self.0.cardinality,
        })
    }

    /// Canonical embedding of a subfield element into this field.
    pub fn embed(&self, sub: &Field, v: u64) -> Result<u64> {
        if sub == self {
            return Ok(v);
        }
        if sub.0.p != self.0.p || self.0.deg % sub.0.deg != 0 {
            return Err(Error::NotSubfield {
                sub: sub.0.cardinality,
                sup: self.0.cardinality,
            });
        }
        if sub.0.deg == 1 {
            return Ok(v);
        }
        let root = self.subfield_generator_image(sub)?;
        let digits = sub.element_digits(v);
        let mut acc = 0u64;
        for &d in digits.iter().rev() {
            acc = self.add(self.mul(acc, root), d);
        }
        Ok(acc)
    }

    /// Inverse of `embed`: expresses `v` as an element of the subfield,
    /// or errors when it does not lie there.
    pub fn project(&self, sub: &Field, v: u64) -> Result<u64> {
        if sub == self {
            return Ok(v);
        }
        if sub.0.p != self.0.p || self.0.deg % sub.0.deg != 0 {
            return Err(Error::NotSubfield {
                sub: sub.0.cardinality,
                sup: self.0.cardinality,
            });
        }
        if sub.0.deg == 1 {
            return if v < self.0.p {
                Ok(v)
            } else {
                Err(Error::NotInSubfield)
            };
        }
        for y in 0..sub.0.cardinality as u64 {
            if self.embed(sub, y)? == v {
                return Ok(y);
            }
        }
        Err(Error::NotInSubfield)
    }

    /// Trace from this field down to `dst`: sum of the conjugates
    /// x^(|dst|^j). The result is returned as an element of `dst`.
    pub fn trace_to(&self, dst: &Field, x: u64) -> Result<u64> {
        if dst.0.p != self.0.p || self.0.deg % dst.0.deg != 0 {
            return Err(Error::NotSubfield {
                sub: dst.0.cardinality,
                sup: self.0.cardinality,
            });
        }
        let s = self.0.deg / dst.0.deg;
        let q = dst.0.cardinality as u64;
        let mut conj = x;
        let mut acc = x;
        for _ in 1..s {
            conj = self.pow(conj, q);
            acc = self.add(acc, conj);
        }
        self.project(dst, acc)
    }

    /// Renders an element, e.g. "0", "2", "a", "2a^2 + a + 1".
    pub fn format_element(&self, v: u64) -> String {
        if self.0.deg == 1 {
            return v.to_string();
        }
        fmt_prime_poly(&self.element_digits(v), "a")
    }

    /// Parses the output of `format_element`.
    pub fn parse_element(&self, s: &str) -> Result<u64> {
        let digits = parse_prime_poly(s, "a", self.0.p)?;
        if digits.len() > self.0.deg {
            return Err(Error::Parse(format!(
                "element degree {} too large for {:?}",
                digits.len() - 1,
                self
            )));
        }
        let mut v = 0u64;
        let mut mul = 1u64;
        for d in digits.iter().take(self.0.deg) {
            v += d * mul;
            mul = mul.saturating_mul(self.0.p);
        }
        Ok(v)
    }
}

/// Formats a polynomial with GF(p) coefficients, highest exponent first,
/// in the style "x^9 + 2x^4 + x + 2". Unit coefficients are omitted except
/// on the constant term; zero renders as "0".
pub(crate) fn fmt_prime_poly(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (e, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}{var}"),
            (_, 1) => format!("{var}^{e}"),
            (_, _) => format!("{c}{var}^{e}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Parses the format produced by `fmt_prime_poly`; coefficients are reduced
/// mod p. Returns coefficients with the constant term first, trimmed.
pub(crate) fn parse_prime_poly(s: &str, var: &str, p: u64) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    for term in s.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling + in {s:?}")));
        }
        let (coeff, exp) = match term.find(var) {
            None => {
                let c: u64 = term
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {term:?}")))?;
                (c, 0usize)
            }
            Some(pos) => {
                let head = &term[..pos];
                let tail = &term[pos + var.len()..];
                let c = if head.is_empty() {
                    1
                } else {
                    head.parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
                };
                let e = if tail.is_empty() {
                    1
                } else if let Some(stripped) = tail.strip_prefix('^') {
                    stripped
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(Error::Parse(format!(
                        "unexpected text after {var:?} in {term:?}"
                    )));
                };
                (c, e)
            }
        };
        if exp >= coeffs.len() {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + coeff) % p;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// First monic irreducible of degree `m` over GF(p) in coefficient order
/// with low-degree coefficients varying fastest. Returned constant-first,
/// length m + 1.
fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut t = 0u128;
    loop {
        let mut f = vec![0u64; m + 1];
        let mut v = t;
        for item in f.iter_mut().take(m) {
            *item = (v % p as u128) as u64;
            v /= p as u128;
        }
        f[m] = 1;
        if pp_is_irreducible(&f, p) {
            return f;
        }
        t += 1;
    }
}

// Dense polynomial helpers over GF(p), constant-first coefficient vectors,
// used only for modulus construction.

fn pp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    pp_trim(&mut out);
    out
}

/// Remainder of `a` by a monic `m`.
fn pp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let idx = shift + j;
                r[idx] = (r[idx] + c * (p - mj % p)) % p;
            }
        }
        r.pop();
        pp_trim(&mut r);
    }
    r
}

fn pp_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_rem(&pp_mul(&acc, &b, p), m, p);
        }
        b = pp_rem(&pp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn pp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    pp_trim(&mut a);
    pp_trim(&mut b);
    while !b.is_empty() {
        let lead = *b.last().unwrap();
        let inv = arith::pow_mod(lead, p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| arith::mul_mod(c, inv, p)).collect();
        let r = pp_rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn pp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, item) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        *item = (av + p - bv) % p;
    }
    pp_trim(&mut out);
    out
}

/// Deterministic irreducibility test over GF(p): f of degree m is
/// irreducible iff x^(p^m) = x mod f and gcd(x^(p^(m/l)) - x, f) is
/// constant for every prime l dividing m.
fn pp_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    if m == 1 {
        return true;
    }
    let frob = |t: &[u64]| pp_pow_mod(t, p, f, p);
    let mut t = pp_rem(&x, f, p);
    for _ in 0..m {
        t = frob(&t);
    }
    if t != pp_rem(&x, f, p) {
        return false;
    }
    for l in arith::distinct_prime_factors(m as u64) {
        let mut t = pp_rem(&x, f, p);
        for _ in 0..(m as u64 / l) {
            t = frob(&t);
        }
        let g = pp_gcd(&pp_sub(&t, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
