//! Arithmetic in the Galois field `GF(q)`, `q = p^n`.
//!
//! Construction is deterministic: the modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `n` over `F_p` (coefficient
//! lists compared from the constant term up), and the generator is the first
//! element in enumeration order whose multiplicative order is `q - 1`.
//! Running the constructor twice therefore yields bit-identical contexts,
//! which keeps every downstream table diffable.
//!
//! Elements are dense coefficient vectors in `[0, p)` with eager reduction,
//! so equality is plain coefficient equality. Multiplication and inversion go
//! through log/exp tables precomputed at construction; that is ample at desk
//! scale (`q <= 2^16`).

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field order (2^16, comfortably above 3^10 = 59049).
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of `GF(p^n)`: coefficients of its residue polynomial in
/// ascending degree, each in `[0, p)`. Equality is coefficient equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial form in the symbol `a`: `0`, `1`, `a`, `2a+1`, `a^2+a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{c}")?,
                1 => {
                    if c != 1 {
                        write!(f, "{c}")?;
                    }
                    write!(f, "a")?;
                }
                _ => {
                    if c != 1 {
                        write!(f, "{c}")?;
                    }
                    write!(f, "a^{deg}")?;
                }
            }
        }
        Ok(())
    }
}

/// A fully constructed field `GF(p^n)`: modulus, generator, and log/exp
/// tables. Immutable after construction and safe to share across threads.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible modulus, ascending degree, length `n + 1`.
    modulus: Vec<u64>,
    generator: FieldElement,
    /// `exp_table[k]` = encoding of `generator^k`, `k` in `0..q-1`.
    exp_table: Vec<u64>,
    /// Discrete log by element encoding; `None` for the zero element.
    log_table: Vec<Option<u64>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        // Construction is deterministic, so (p, n) identifies the context.
        self.p == other.p && self.n == other.n
    }
}
impl Eq for FieldCtx {}

impl FieldCtx {
    /// Build `GF(p^n)` deterministically.
    pub fn new(p: u64, n: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if n < 1 {
            return Err(Error::InvalidDegree(n));
        }
        let q = checked_pow(p, n).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::FieldTooLarge(checked_pow(p, n).unwrap_or(u64::MAX), MAX_FIELD_ORDER)
        })?;

        let modulus = smallest_irreducible(p, n);
        let generator_enc = find_generator(p, n, q, &modulus);

        // exp/log tables by repeated polynomial multiplication.
        let mut exp_table = Vec::with_capacity((q - 1) as usize);
        let mut log_table = vec![None; q as usize];
        let gen_poly = decode_poly(generator_enc, p, n);
        let mut acc = decode_poly(1, p, n);
        for k in 0..q - 1 {
            let enc = encode_poly(&acc, p);
            exp_table.push(enc);
            debug_assert!(log_table[enc as usize].is_none(), "generator order defect");
            log_table[enc as usize] = Some(k);
            acc = poly_mulmod(&acc, &gen_poly, &modulus, p);
        }

        Ok(FieldCtx {
            p,
            n,
            q,
            modulus,
            generator: FieldElement { coeffs: gen_poly },
            exp_table,
            log_table,
        })
    }

    /// Convenience: build the field of order `q` (must be a prime power),
    /// wrapped for shared ownership.
    pub fn for_order(q: u64) -> Result<Arc<FieldCtx>> {
        let (p, n) = factor_prime_power(q).ok_or(Error::InvalidField(q))?;
        Ok(Arc::new(FieldCtx::new(p, n)?))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The field characteristic (smallest m with m copies of 1 summing to 0).
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The modulus polynomial, ascending degree, monic of degree `n`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.decode(1)
    }

    /// Element from explicit coefficients (ascending degree, length `n`,
    /// each in `[0, p)`).
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { coeffs })
    }

    /// Element of the prime subfield from an integer residue.
    pub fn from_int(&self, k: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        coeffs[0] = k % self.p;
        FieldElement { coeffs }
    }

    /// Integer encoding `sum c_i p^i`; enumeration order is ascending
    /// encoding, so `decode(0)` is zero and `decode(1)` is one.
    pub fn encode(&self, e: &FieldElement) -> u64 {
        encode_poly(&e.coeffs, self.p)
    }

    pub fn decode(&self, enc: u64) -> FieldElement {
        debug_assert!(enc < self.q);
        FieldElement { coeffs: decode_poly(enc, self.p, self.n) }
    }

    /// All `q` elements in ascending coefficient-lexicographic order
    /// (zero first, the prime subfield 0,1,..,p-1 leading).
    pub fn enumerate_elements(&self) -> Vec<FieldElement> {
        (0..self.q).map(|enc| self.decode(enc)).collect()
    }

    fn check(&self, e: &FieldElement) -> Result<()> {
        if e.coeffs.len() != self.n as usize || e.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        let la = self.log_table[self.encode(a) as usize].unwrap();
        let lb = self.log_table[self.encode(b) as usize].unwrap();
        Ok(self.decode(self.exp_table[((la + lb) % (self.q - 1)) as usize]))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let la = self.log_table[self.encode(a) as usize].unwrap();
        Ok(self.decode(self.exp_table[((self.q - 1 - la) % (self.q - 1)) as usize]))
    }

    /// `a^k`, with negative exponents routed through the inverse.
    /// `pow(0, 0)` is 1; `pow(0, k)` for negative `k` is a division by zero.
    pub fn pow(&self, a: &FieldElement, k: i64) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return match k {
                0 => Ok(self.one()),
                k if k > 0 => Ok(self.zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        let la = self.log_table[self.encode(a) as usize].unwrap() as i128;
        let m = (self.q - 1) as i128;
        let idx = (la * k as i128).rem_euclid(m) as usize;
        Ok(self.decode(self.exp_table[idx]))
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log(&self, a: &FieldElement) -> Result<Option<u64>> {
        self.check(a)?;
        Ok(self.log_table[self.encode(a) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FieldElement) -> Result<u64> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let la = self.log_table[self.encode(a) as usize].unwrap();
        let m = self.q - 1;
        Ok(m / num_integer::gcd(la, m))
    }

    /// Allocation-free arithmetic on element encodings, for tight sweep
    /// loops. `add_enc` works digit by digit; `mul_enc` goes through the
    /// log/exp tables. Encodings must be `< q`.
    pub fn add_enc(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        let mut out = 0;
        let mut weight = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.n {
            out += (a % self.p + b % self.p) % self.p * weight;
            a /= self.p;
            b /= self.p;
            weight *= self.p;
        }
        out
    }

    /// `a - b` on encodings.
    pub fn sub_enc(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        let mut out = 0;
        let mut weight = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.n {
            out += (a % self.p + self.p - b % self.p) % self.p * weight;
            a /= self.p;
            b /= self.p;
            weight *= self.p;
        }
        out
    }

    /// `a * b` on encodings.
    pub fn mul_enc(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let la = self.log_table[a as usize].expect("nonzero");
        let lb = self.log_table[b as usize].expect("nonzero");
        self.exp_table[((la + lb) % (self.q - 1)) as usize]
    }

    /// Wire form used by the CLI: `"p^n:c0,c1,...,c(n-1)"`.
    pub fn element_code(&self, e: &FieldElement) -> String {
        let coeffs: Vec<String> = e.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.p, self.n, coeffs.join(","))
    }
}

/// Split `q` into `(p, n)` with `p` prime, if `q` is a prime power `p^n`.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut m = q;
    let mut p = 0;
    for d in 2.. {
        if d * d > m {
            break;
        }
        if m.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    if p == 0 {
        return Some((q, 1)); // q itself prime
    }
    let mut n = 0;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    if m == 1 {
        Some((p, n))
    } else {
        None
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, n: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

fn encode_poly(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode_poly(mut enc: u64, p: u64, n: u32) -> Vec<u64> {
    let mut coeffs = vec![0; n as usize];
    for c in coeffs.iter_mut() {
        *c = enc % p;
        enc /= p;
    }
    coeffs
}

/// Degree of a polynomial given as an ascending coefficient list; `None` for
/// the zero polynomial.
fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod `p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(m).expect("monic divisor");
    let mut r = a.to_vec();
    while let Some(rd) = poly_deg(&r) {
        if rd < md {
            break;
        }
        let lead = r[rd];
        let shift = rd - md;
        for i in 0..=md {
            r[i + shift] = (r[i + shift] + (p - m[i] % p) * lead) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// Irreducibility over `F_p` by trial division against every monic polynomial
/// of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly_deg(poly).unwrap();
    for d in 1..=deg / 2 {
        let count = checked_pow(p, d as u32).unwrap();
        for enc in 0..count {
            let mut div = decode_poly(enc, p, d as u32);
            div.push(1); // monic of degree d
            if poly_deg(&poly_rem(poly, &div, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `n`, comparing
/// coefficient lists from the constant term up.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let count = checked_pow(p, n).unwrap();
    for idx in 0..count {
        // idx digits written most-significant-first give (c0, c1, ..).
        let mut coeffs = vec![0; n as usize];
        let mut rest = idx;
        for i in (0..n as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// First element in enumeration order with multiplicative order `q - 1`.
fn find_generator(p: u64, n: u32, q: u64, modulus: &[u64]) -> u64 {
    let prime_factors = distinct_prime_factors(q - 1);
    'cand: for enc in 1..q {
        let e = decode_poly(enc, p, n);
        for &f in &prime_factors {
            if poly_pow_is_one(&e, (q - 1) / f, modulus, p, n) {
                continue 'cand;
            }
        }
        return enc;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

fn poly_pow_is_one(a: &[u64], mut k: u64, modulus: &[u64], p: u64, n: u32) -> bool {
    let mut acc = decode_poly(1, p, n);
    let mut base = a.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        k >>= 1;
    }
    encode_poly(&acc, p) == 1
}

fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
