//! Primary primes of Z[ω]: sieving by norm, factorization, prime and ideal
//! counting.
//!
//! A rational prime p ≠ 3 either splits (p ≡ 1 mod 3) into two conjugate
//! primes of norm p, or stays inert (p ≡ 2 mod 3) with norm p². The ramified
//! prime 1 − ω above 3 is not primary and is never stored; only primary
//! generators enter the table. Split primes are constructed by solving
//! t² + t + 1 ≡ 0 mod p and lattice-reducing, which is logarithmic in p.

use crate::cache::JsonlStore;
use crate::eisenstein::{primary_associate, EisensteinInt, PrimaryElement, Unit};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Largest norm the sieve will accept.
pub const SIEVE_NORM_CAP: i128 = 100_000_000;

/// li(2), the offset for the principal-value logarithmic integral.
const LI_AT_2: f64 = 1.0451637801174927;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    /// Norm is a rational prime p ≡ 1 mod 3.
    Split,
    /// Associate of a rational prime p ≡ 2 mod 3; norm p².
    Inert,
}

/// A primary prime element together with its precomputed norm and kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EisensteinPrime {
    element: PrimaryElement,
    norm: i128,
    kind: PrimeKind,
}

impl EisensteinPrime {
    pub fn element(&self) -> PrimaryElement {
        self.element
    }

    pub fn norm(&self) -> i128 {
        self.norm
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }
}

/// Cache row mirror of [`EisensteinPrime`]; coordinates fit i64 at every
/// supported sieve size.
#[derive(Serialize, Deserialize)]
struct PrimeRecord {
    a: i64,
    b: i64,
    norm: i64,
    kind: PrimeKind,
}

#[derive(Serialize, Deserialize, PartialEq)]
struct PrimeHeader {
    format: String,
    version: u32,
    limit: i64,
}

/// Immutable, norm-sorted table of all primary primes up to a norm limit.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: i128,
    primes: Vec<EisensteinPrime>,
}

/// All primary primes with norm ≤ `norm_limit`, sorted by (norm, a, b).
pub fn sieve_primary_primes(norm_limit: i128) -> Result<Vec<EisensteinPrime>> {
    if norm_limit < 2 {
        return Err(Error::Domain(format!(
            "sieve limit must be at least 2, got {norm_limit}"
        )));
    }
    if norm_limit > SIEVE_NORM_CAP {
        return Err(Error::SieveCapacity {
            requested: norm_limit,
            cap: SIEVE_NORM_CAP,
        });
    }
    let rational = rational_prime_bits(norm_limit as u64);
    let mut out = Vec::new();
    for p in 2..=(norm_limit as u64) {
        if !rational.get(p) {
            continue;
        }
        if p % 3 == 1 {
            let (pi, bar) = split_prime_pair(p)?;
            out.push(EisensteinPrime {
                element: pi,
                norm: p as i128,
                kind: PrimeKind::Split,
            });
            out.push(EisensteinPrime {
                element: bar,
                norm: p as i128,
                kind: PrimeKind::Split,
            });
        } else if p % 3 == 2 && (p as i128) * (p as i128) <= norm_limit {
            let element = primary_associate(&EisensteinInt::new(p as i128, 0))?;
            out.push(EisensteinPrime {
                element,
                norm: (p as i128) * (p as i128),
                kind: PrimeKind::Inert,
            });
        }
    }
    out.sort_by_key(|q| (q.norm, q.element.value().a(), q.element.value().b()));
    Ok(out)
}

/// The two conjugate primary primes of norm p, for split p ≡ 1 mod 3.
fn split_prime_pair(p: u64) -> Result<(PrimaryElement, PrimaryElement)> {
    // Root of t² + t + 1 mod p from a square root of −3: t = (s − 1)/2.
    let s = sqrt_mod(p - 3, p).expect("-3 is a QR mod every split prime");
    let t = mod_mul(
        (s + p - 1) % p,
        mod_pow(2, p - 2, p),
        p,
    ) as i128;
    // The ideal lattice {a + bω : a + bt ≡ 0 mod p} has minimal norm p.
    let short = gauss_reduce((p as i128, 0), (-t, 1));
    let z = EisensteinInt::new(short.0, short.1);
    debug_assert_eq!(z.norm()?, p as i128);
    let pi = primary_associate(&z)?;
    let bar = pi.conj()?;
    Ok((pi, bar))
}

/// Lagrange–Gauss reduction for the form a² − ab + b²; returns a shortest
/// nonzero vector of the lattice spanned by v1, v2.
fn gauss_reduce(mut v1: (i128, i128), mut v2: (i128, i128)) -> (i128, i128) {
    let n = |v: (i128, i128)| v.0 * v.0 - v.0 * v.1 + v.1 * v.1;
    // Twice the inner product associated with the norm form.
    let b2 = |u: (i128, i128), v: (i128, i128)| {
        2 * u.0 * v.0 - u.0 * v.1 - u.1 * v.0 + 2 * u.1 * v.1
    };
    loop {
        if n(v1) > n(v2) {
            std::mem::swap(&mut v1, &mut v2);
        }
        let num = b2(v1, v2);
        let den = 2 * n(v1);
        let m = round_div(num, den);
        if m == 0 {
            return v1;
        }
        v2 = (v2.0 - m * v1.0, v2.1 - m * v1.1);
    }
}

fn round_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    let q = n.div_euclid(d);
    let r = n.rem_euclid(d);
    if 2 * r >= d {
        q + 1
    } else {
        q
    }
}

impl PrimeTable {
    pub fn sieve(norm_limit: i128) -> Result<Self> {
        Ok(Self {
            limit: norm_limit,
            primes: sieve_primary_primes(norm_limit)?,
        })
    }

    /// Loads `primes-<limit>.jsonl` from `dir` when present and well formed,
    /// otherwise sieves and writes the cache back.
    pub fn load_or_sieve(norm_limit: i128, dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::sieve(norm_limit);
        };
        let store = JsonlStore::new(dir);
        let name = format!("primes-{norm_limit}.jsonl");
        let header = PrimeHeader {
            format: "eisenstein-primes".into(),
            version: 1,
            limit: norm_limit as i64,
        };
        if let Some(rows) = store.load::<PrimeHeader, PrimeRecord>(&name, &header)? {
            let mut primes = Vec::with_capacity(rows.len());
            for r in rows {
                let z = EisensteinInt::new(r.a as i128, r.b as i128);
                if z.norm()? != r.norm as i128 {
                    return Err(Error::CacheFormat(format!(
                        "{name}: norm mismatch for record ({}, {})",
                        r.a, r.b
                    )));
                }
                primes.push(EisensteinPrime {
                    element: PrimaryElement::from_primary(z)?,
                    norm: r.norm as i128,
                    kind: r.kind,
                });
            }
            return Ok(Self {
                limit: norm_limit,
                primes,
            });
        }
        let table = Self::sieve(norm_limit)?;
        let rows: Vec<PrimeRecord> = table
            .primes
            .iter()
            .map(|p| PrimeRecord {
                a: p.element.value().a() as i64,
                b: p.element.value().b() as i64,
                norm: p.norm as i64,
                kind: p.kind,
            })
            .collect();
        store.store(&name, &header, &rows)?;
        Ok(table)
    }

    pub fn limit(&self) -> i128 {
        self.limit
    }

    pub fn primes(&self) -> &[EisensteinPrime] {
        &self.primes
    }

    /// Primes with norm ≤ x, in sorted order.
    pub fn primes_norm_le(&self, x: i128) -> &[EisensteinPrime] {
        let end = self.primes.partition_point(|p| p.norm <= x);
        &self.primes[..end]
    }

    /// Number of prime ideals of norm ≤ x, including the ramified ideal
    /// above 3; split ideals and their conjugates count separately.
    pub fn pi_k(&self, x: f64) -> Result<u64> {
        if x < 2.0 {
            return Err(Error::Domain(format!("pi_K needs x ≥ 2, got {x}")));
        }
        let xi = x.floor() as i128;
        if xi > self.limit {
            return Err(Error::SieveCapacity {
                requested: xi,
                cap: self.limit,
            });
        }
        let ramified = u64::from(xi >= 3);
        Ok(self.primes_norm_le(xi).len() as u64 + ramified)
    }

    /// Exact factorization of a primary element into sieved primary primes.
    ///
    /// Works for all n with N(n) ≤ limit²: after trial division by every
    /// sieved prime of norm ≤ N(remaining cofactor)^(1/2) squared, any
    /// cofactor left is itself prime.
    pub fn factor(&self, n: &PrimaryElement) -> Result<Factorization> {
        let total = n.norm()?;
        let cap = self
            .limit
            .checked_mul(self.limit)
            .ok_or(Error::ArithmeticOverflow("sieve limit squared"))?;
        if total > cap {
            return Err(Error::FactorizationUnavailable {
                norm: total,
                limit: self.limit,
            });
        }
        let mut rem = n.value();
        let mut rem_norm = total;
        let mut factors: Vec<(EisensteinPrime, u32)> = Vec::new();
        for prime in &self.primes {
            if prime.norm * prime.norm > rem_norm {
                break;
            }
            if rem_norm % prime.norm != 0 {
                continue;
            }
            let mut e = 0u32;
            while let Some(q) = prime.element.value().div_exact(&rem)? {
                rem = q;
                e += 1;
            }
            if e > 0 {
                rem_norm = rem.norm()?;
                factors.push((*prime, e));
            }
        }
        if rem != EisensteinInt::ONE {
            // Prime cofactor beyond the table, classified by its norm.
            let element = PrimaryElement::from_primary(rem)?;
            let kind = classify_prime_norm(rem_norm).ok_or(Error::FactorizationUnavailable {
                norm: total,
                limit: self.limit,
            })?;
            factors.push((
                EisensteinPrime {
                    element,
                    norm: rem_norm,
                    kind,
                },
                1,
            ));
        }
        factors.sort_by_key(|(p, _)| (p.norm, p.element.value().a(), p.element.value().b()));
        Ok(Factorization {
            unit: Unit::One,
            factors,
        })
    }
}

fn classify_prime_norm(n: i128) -> Option<PrimeKind> {
    if n % 3 == 1 && is_rational_prime(n as u128) {
        return Some(PrimeKind::Split);
    }
    let q = isqrt_i128(n);
    if q * q == n && q % 3 == 2 && is_rational_prime(q as u128) {
        return Some(PrimeKind::Inert);
    }
    None
}

pub(crate) fn isqrt_i128(n: i128) -> i128 {
    if n < 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Factorization n = unit · ∏ πᵢ^{eᵢ} into primary primes. For primary n the
/// unit is always 1; the field exists so the reconstruction identity holds
/// verbatim.
#[derive(Clone, Debug)]
pub struct Factorization {
    unit: Unit,
    factors: Vec<(EisensteinPrime, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn factors(&self) -> &[(EisensteinPrime, u32)] {
        &self.factors
    }

    /// Ω(n): number of prime factors with multiplicity.
    pub fn omega_big(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// ω(n): number of distinct prime factors.
    pub fn omega_small(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn product(&self) -> Result<EisensteinInt> {
        let mut acc = self.unit.value();
        for (p, e) in &self.factors {
            acc = acc.mul(&p.element.value().pow(*e)?)?;
        }
        Ok(acc)
    }

    /// All primary divisors, in no particular order.
    pub fn divisors(&self) -> Result<Vec<PrimaryElement>> {
        let mut out = vec![PrimaryElement::ONE];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            let mut power = PrimaryElement::ONE;
            for k in 0..=*e {
                if k > 0 {
                    power = power.mul(&p.element)?;
                }
                for d in &out {
                    next.push(d.mul(&power)?);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// All primary elements of norm ≤ `limit`, sorted by norm (ties broken by
/// coordinates). Every ideal coprime to (1−ω) has exactly one primary
/// generator, so this is the ideal stream that L-series sums run over.
pub fn primary_elements_norm_le(limit: i128) -> Result<Vec<(i128, EisensteinInt)>> {
    if limit > SIEVE_NORM_CAP {
        return Err(Error::SieveCapacity {
            requested: limit,
            cap: SIEVE_NORM_CAP,
        });
    }
    let mut out = Vec::new();
    if limit < 1 {
        return Ok(out);
    }
    let bmax = isqrt_i128(4 * limit / 3);
    let mut b = -(bmax - bmax.rem_euclid(3));
    while b <= bmax {
        let disc = 4 * limit - 3 * b * b;
        if disc >= 0 {
            let s = isqrt_i128(disc);
            // a² − ab + (b² − limit) ≤ 0 gives a ∈ [(b−s)/2, (b+s)/2].
            let lo = (b - s).div_euclid(2);
            let mut a = lo + (1 - lo).rem_euclid(3);
            let hi = (b + s).div_euclid(2);
            while a <= hi {
                let n = a * a - a * b + b * b;
                if n >= 1 && n <= limit {
                    out.push((n, EisensteinInt::new(a, b)));
                }
                a += 3;
            }
        }
        b += 3;
    }
    out.sort_by_key(|(n, z)| (*n, z.a(), z.b()));
    Ok(out)
}

/// Number of nonzero integral ideals of norm ≤ x: one sixth of the nonzero
/// lattice points inside the norm-x ellipse, counted exactly.
pub fn ideal_count(x: f64) -> Result<i128> {
    if x < 1.0 {
        return Err(Error::Domain(format!("ideal_count needs x ≥ 1, got {x}")));
    }
    let xi = x.floor() as i128;
    let norm = |a: i128, b: i128| a * a - a * b + b * b;
    let mut count: i128 = 0;
    let amax = isqrt_i128(4 * xi / 3) + 1;
    for a in -amax..=amax {
        let disc = 4 * xi - 3 * a * a;
        if disc < 0 {
            continue;
        }
        let s = isqrt_i128(disc);
        // b ranges over the integer solutions of b² − ab + a² − x ≤ 0.
        let mut lo = (a - s).div_euclid(2);
        let mut hi = (a + s).div_euclid(2) + 1;
        while norm(a, lo) > xi {
            lo += 1;
        }
        while norm(a, lo - 1) <= xi {
            lo -= 1;
        }
        while norm(a, hi) > xi {
            hi -= 1;
        }
        while norm(a, hi + 1) <= xi {
            hi += 1;
        }
        count += hi - lo + 1;
    }
    Ok((count - 1) / 6)
}

/// Principal-value logarithmic integral li(x) = ∫₀ˣ dt/log t, for x ≥ 2.
pub fn li(x: f64) -> Result<f64> {
    if x < 2.0 {
        return Err(Error::Domain(format!("li implemented for x ≥ 2, got {x}")));
    }
    let f = |t: f64| 1.0 / t.ln();
    Ok(LI_AT_2 + adaptive_simpson(&f, 2.0, x, 1e-6))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        m: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let left = simpson(f, a, lm, m);
        let right = simpson(f, m, rm, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, lm, m, left, tol / 2.0, depth - 1)
                + recurse(f, m, rm, b, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    recurse(f, a, m, b, simpson(f, a, m, b), tol, 40)
}

/// Deterministic Miller–Rabin; exact for every n < 3.3·10²⁴, far above any
/// norm this crate produces.
pub fn is_rational_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul_u128(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    // Double-and-add fallback for operands near the u128 ceiling.
    let mut acc: u128 = 0;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn mod_pow_u128(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul_u128(acc, base, m);
        }
        base = mod_mul_u128(base, base, m);
        e >>= 1;
    }
    acc
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        e >>= 1;
    }
    acc
}

/// Tonelli–Shanks square root of a mod odd prime p, `None` for non-residues.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

/// Compact bit-set sieve of Eratosthenes.
struct BitSieve {
    words: Vec<u64>,
}

impl BitSieve {
    fn get(&self, i: u64) -> bool {
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }
}

fn rational_prime_bits(limit: u64) -> BitSieve {
    let n = limit + 1;
    let mut words = vec![u64::MAX; (n as usize + 63) / 64];
    let clear = |w: &mut [u64], i: u64| w[(i / 64) as usize] &= !(1 << (i % 64));
    clear(&mut words, 0);
    if limit >= 1 {
        clear(&mut words, 1);
    }
    let mut p = 2u64;
    while p * p <= limit {
        if (words[(p / 64) as usize] >> (p % 64)) & 1 == 1 {
            let mut q = p * p;
            while q <= limit {
                clear(&mut words, q);
                q += p;
            }
        }
        p += 1;
    }
    BitSieve { words }
}
