//! The family 𝓕(X) of primitive cubic characters with conductor norm ≤ X.
//!
//! Members are parametrized by coprime squarefree primary pairs (c₁, c₂),
//! not both 1, with c = c₂c₁² ≡ 1 mod 9 (both coordinates). The character is
//! χ_c = (·/c)₃; its conductor is the ideal (q) with q = c₁c₂, and the mod-9
//! condition makes χ_c trivial on units and on 1 − ω, so it descends to a
//! primitive cubic Hecke character. Conjugation acts by swapping c₁ and c₂.
//!
//! Besides enumeration the module computes the constants C₁(n), C₂(n) in the
//! family-size asymptotic |{c ∈ 𝓕(X), (c,n)=1}| = C₁(n)X log X + C₂(n)X + …
//! and runs character-sum cancellation diagnostics over the family.

use crate::cache::JsonlStore;
use crate::eisenstein::{gcd, EisensteinInt, PrimaryElement};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::symbol::{cubic_symbol, CubicSymbol};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Residue of the Dedekind zeta function of Q(ω) at s = 1: π/(3√3).
pub const ZETA_RESIDUE: f64 = 0.6045997880780726;

/// Default for the constant lim_{s→1} ((s−1)²ζ_K²(s))′ = 2·ρ·γ₀ appearing in
/// C₂(n), with γ₀ the zeta constant term; estimated numerically, see
/// [`estimate_zeta_sq_derivative`].
pub const DEFAULT_ZETA_SQ_DERIVATIVE: f64 = 0.691235861075;

/// π²·log(3/e)/27, the other explicit constant inside C₂(n).
pub const C2_LOG_CONSTANT: f64 = 0.036046825131205;

/// One member c = c₂c₁² of the family, with its conductor data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyElement {
    c1: PrimaryElement,
    c2: PrimaryElement,
    c: PrimaryElement,
    q: PrimaryElement,
    conductor_norm: i128,
}

impl FamilyElement {
    /// Builds and fully validates a member from its coprime squarefree parts.
    pub fn new(c1: PrimaryElement, c2: PrimaryElement, table: &PrimeTable) -> Result<Self> {
        let g = gcd(&c1.value(), &c2.value())?;
        if g != EisensteinInt::ONE {
            return Err(Error::Domain(format!(
                "c1 and c2 share the factor {g}"
            )));
        }
        if !table.factor(&c1)?.is_squarefree() || !table.factor(&c2)?.is_squarefree() {
            return Err(Error::Domain("c1 and c2 must be squarefree".into()));
        }
        Self::from_parts(c1, c2).ok_or_else(|| {
            Error::Domain("pair violates the mod-9 condition or gives c = 1".into())
        })
    }

    /// Constructs a member assuming coprimality and squarefreeness hold;
    /// still enforces the mod-9 congruence and c ≠ 1.
    fn from_parts(c1: PrimaryElement, c2: PrimaryElement) -> Option<Self> {
        let c = c2.mul(&c1).ok()?.mul(&c1).ok()?;
        let cv = c.value();
        if cv.a().rem_euclid(9) != 1 || cv.b().rem_euclid(9) != 0 {
            return None;
        }
        if cv == EisensteinInt::ONE {
            return None;
        }
        let q = c1.mul(&c2).ok()?;
        let conductor_norm = q.norm().ok()?;
        Some(Self {
            c1,
            c2,
            c,
            q,
            conductor_norm,
        })
    }

    pub fn c1(&self) -> PrimaryElement {
        self.c1
    }

    pub fn c2(&self) -> PrimaryElement {
        self.c2
    }

    /// c = c₂c₁², the modulus defining χ_c.
    pub fn c(&self) -> PrimaryElement {
        self.c
    }

    /// Primary generator of the conductor ideal, q = c₁c₂.
    pub fn q(&self) -> PrimaryElement {
        self.q
    }

    /// n_χ = N(q).
    pub fn conductor_norm(&self) -> i128 {
        self.conductor_norm
    }

    /// χ_c(α). Zero exactly when gcd(α, q) ≠ 1.
    pub fn chi(&self, alpha: &EisensteinInt) -> Result<CubicSymbol> {
        cubic_symbol(alpha, &self.c)
    }

    /// The conjugate character's member: c₁ and c₂ swapped. Same conductor.
    pub fn conjugate(&self) -> Result<FamilyElement> {
        let c = self.c1.mul(&self.c2)?.mul(&self.c2)?;
        debug_assert_eq!(c.value().a().rem_euclid(9), 1);
        debug_assert_eq!(c.value().b().rem_euclid(9), 0);
        Ok(FamilyElement {
            c1: self.c2,
            c2: self.c1,
            c,
            q: self.q,
            conductor_norm: self.conductor_norm,
        })
    }

    /// Stable sort/cache key.
    pub fn key(&self) -> (i128, i128, i128) {
        (self.conductor_norm, self.c.value().a(), self.c.value().b())
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRecord {
    c1_a: i64,
    c1_b: i64,
    c2_a: i64,
    c2_b: i64,
    conductor_norm: i64,
}

#[derive(Serialize, Deserialize, PartialEq)]
struct FamilyHeader {
    format: String,
    version: u32,
    limit: i64,
}

/// Every member with conductor norm ≤ x, sorted by (conductor norm, c).
///
/// Squarefree primary moduli q are generated as subset products of the prime
/// table (a depth-first walk with norm pruning); the divisor loop over d | q
/// then applies the mod-9 filter.
pub fn enumerate_family(x: i128, table: &PrimeTable) -> Result<Vec<FamilyElement>> {
    if x < 1 {
        return Err(Error::Domain(format!("family bound must be ≥ 1, got {x}")));
    }
    if x > table.limit() {
        return Err(Error::SieveCapacity {
            requested: x,
            cap: table.limit(),
        });
    }
    let primes = table.primes_norm_le(x);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    dfs_squarefree(primes, 0, PrimaryElement::ONE, 1, x, &mut chosen, &mut out)?;
    out.sort_by_key(|f| f.key());
    Ok(out)
}

fn dfs_squarefree(
    primes: &[crate::primes::EisensteinPrime],
    start: usize,
    q: PrimaryElement,
    q_norm: i128,
    x: i128,
    chosen: &mut Vec<usize>,
    out: &mut Vec<FamilyElement>,
) -> Result<()> {
    emit_divisor_pairs(primes, q, chosen, out)?;
    for i in start..primes.len() {
        let pn = primes[i].norm();
        if pn > x / q_norm {
            break;
        }
        chosen.push(i);
        let next = q.mul(&primes[i].element())?;
        dfs_squarefree(primes, i + 1, next, q_norm * pn, x, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// For a fixed squarefree q (with prime index set `chosen`), scans d | q and
/// keeps the pairs with qd ≡ 1 mod 9.
fn emit_divisor_pairs(
    primes: &[crate::primes::EisensteinPrime],
    q: PrimaryElement,
    chosen: &[usize],
    out: &mut Vec<FamilyElement>,
) -> Result<()> {
    let k = chosen.len();
    debug_assert!(k < 64);
    for mask in 0u64..(1u64 << k) {
        let mut d = PrimaryElement::ONE;
        let mut rest = PrimaryElement::ONE;
        for (bit, &idx) in chosen.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                d = d.mul(&primes[idx].element())?;
            } else {
                rest = rest.mul(&primes[idx].element())?;
            }
        }
        debug_assert_eq!(d.mul(&rest)?.value(), q.value());
        if let Some(f) = FamilyElement::from_parts(d, rest) {
            out.push(f);
        }
    }
    Ok(())
}

/// Cached variant of [`enumerate_family`], persisting `family-<X>.jsonl`.
pub fn enumerate_family_cached(
    x: i128,
    table: &PrimeTable,
    dir: Option<&Path>,
) -> Result<Vec<FamilyElement>> {
    let Some(dir) = dir else {
        return enumerate_family(x, table);
    };
    let store = JsonlStore::new(dir);
    let name = format!("family-{x}.jsonl");
    let header = FamilyHeader {
        format: "cubic-family".into(),
        version: 1,
        limit: x as i64,
    };
    if let Some(rows) = store.load::<FamilyHeader, FamilyRecord>(&name, &header)? {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let c1 = PrimaryElement::from_primary(EisensteinInt::new(r.c1_a as i128, r.c1_b as i128))?;
            let c2 = PrimaryElement::from_primary(EisensteinInt::new(r.c2_a as i128, r.c2_b as i128))?;
            let f = FamilyElement::from_parts(c1, c2).ok_or_else(|| {
                Error::CacheFormat(format!("{name}: invalid family pair ({}, {})", r.c1_a, r.c2_a))
            })?;
            if f.conductor_norm != r.conductor_norm as i128 {
                return Err(Error::CacheFormat(format!(
                    "{name}: conductor mismatch for ({}, {})",
                    r.c1_a, r.c1_b
                )));
            }
            out.push(f);
        }
        return Ok(out);
    }
    let fresh = enumerate_family(x, table)?;
    let rows: Vec<FamilyRecord> = fresh
        .iter()
        .map(|f| FamilyRecord {
            c1_a: f.c1.value().a() as i64,
            c1_b: f.c1.value().b() as i64,
            c2_a: f.c2.value().a() as i64,
            c2_b: f.c2.value().b() as i64,
            conductor_norm: f.conductor_norm as i64,
        })
        .collect();
    store.store(&name, &header, &rows)?;
    Ok(fresh)
}

/// The constants of the family-size asymptotic, with explicit truncation
/// accounting.
#[derive(Clone, Copy, Debug)]
pub struct FamilySizeConstants {
    /// C₁(n) = 4π²·F_{ψ₀}(1;n)/2187.
    pub c1: f64,
    /// F_{ψ₀}(1;n), truncated over the sieve.
    pub f_value: f64,
    /// F′_{ψ₀}(1;n)/F_{ψ₀}(1;n), from the closed-form log derivative.
    pub f_log_derivative: f64,
    /// Relative tail bound on the truncated Euler product.
    pub tail_bound: f64,
}

impl FamilySizeConstants {
    /// Assembles C₂(n) given the zeta-square derivative constant
    /// lim_{s→1}((s−1)²ζ_K²(s))′ (see [`DEFAULT_ZETA_SQ_DERIVATIVE`]).
    pub fn c2(&self, zeta_sq_derivative: f64) -> f64 {
        let f_prime = self.f_log_derivative * self.f_value;
        4.0 * self.f_value / 81.0 * (C2_LOG_CONSTANT + zeta_sq_derivative)
            + 4.0 * std::f64::consts::PI.powi(2) / 2187.0 * f_prime
    }
}

/// C₁(n) and the F-dependent parts of C₂(n), by truncated Euler product with
/// a rigorous tail bound ≤ tol.
///
/// The principal-character local factors are 1 − 3/N² + 2/N³ at primes away
/// from n and (1 − 1/N)² at primes dividing n; at most two prime ideals share
/// any norm, so the log-tail beyond the sieve limit L is below 7.2/L.
pub fn family_size_constants(
    n: &PrimaryElement,
    tol: f64,
    table: &PrimeTable,
) -> Result<FamilySizeConstants> {
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let limit = table.limit();
    let tail_bound = 7.2 / limit as f64;
    if tail_bound > tol {
        return Err(Error::SieveCapacity {
            requested: (7.2 / tol).ceil() as i128,
            cap: limit,
        });
    }
    let nv = n.value();
    let mut log_f = 0.0;
    let mut ratio = 0.0;
    for p in table.primes() {
        let nn = p.norm() as f64;
        let ln_n = nn.ln();
        if p.element().value().divides(&nv)? {
            log_f += 2.0 * (1.0 - 1.0 / nn).ln();
            ratio += 2.0 * ln_n / (nn - 1.0);
        } else {
            let local = 1.0 - 3.0 / (nn * nn) + 2.0 / (nn * nn * nn);
            log_f += local.ln();
            ratio += 6.0 * ln_n * (nn - 1.0) / (nn * nn * nn * local);
        }
    }
    let f_value = log_f.exp();
    Ok(FamilySizeConstants {
        c1: 4.0 * std::f64::consts::PI.powi(2) * f_value / 2187.0,
        f_value,
        f_log_derivative: ratio,
        tail_bound,
    })
}

/// Estimates lim_{s→1}((s−1)²ζ_K²(s))′ = 2ργ₀ from the ideal-count partial
/// sum Σ_{N𝔞 ≤ x} 1/N𝔞 = ρ·log x + γ₀ + o(1).
pub fn estimate_zeta_sq_derivative(x: i128) -> Result<f64> {
    let gamma0 = ideal_reciprocal_sum(x)? - ZETA_RESIDUE * (x as f64).ln();
    Ok(2.0 * ZETA_RESIDUE * gamma0)
}

/// Character-sum diagnostic over the family.
#[derive(Clone, Copy, Debug)]
pub struct CharacterSumReport {
    /// Σ χ_m(c) over coprime members, assembled exactly from root-of-unity
    /// counts.
    pub sum: Complex64,
    /// How many coprime members hit exponent 0, 1, 2.
    pub counts: [u64; 3],
    /// #{c ∈ 𝓕(X) : (c, m) = 1}.
    pub coprime_count: u64,
    /// |sum|/√X, the square-root-cancellation figure of merit.
    pub normalized: f64,
}

/// Σ_{c ∈ 𝓕(X), (c,m)=1} χ_m(c), computed exactly: only the counts of the
/// three cube roots of unity are accumulated, then combined once.
pub fn character_sum_over_family(
    m: &PrimaryElement,
    family: &[FamilyElement],
    x: i128,
) -> Result<CharacterSumReport> {
    let mut counts = [0u64; 3];
    for f in family {
        match cubic_symbol(&f.c().value(), m)? {
            CubicSymbol::Zero => {}
            CubicSymbol::Root(j) => counts[j as usize] += 1,
        }
    }
    let coprime_count = counts.iter().sum();
    let half = 0.8660254037844386;
    let sum = Complex64::new(
        counts[0] as f64 - 0.5 * (counts[1] + counts[2]) as f64,
        (counts[1] as f64 - counts[2] as f64) * half,
    );
    Ok(CharacterSumReport {
        sum,
        counts,
        coprime_count,
        normalized: sum.norm() / (x as f64).sqrt(),
    })
}

/// Exact lattice partial sum Σ_{N𝔞 ≤ x} 1/N𝔞, exposed for the zeta-residue
/// diagnostics.
pub fn ideal_reciprocal_sum(x: i128) -> Result<f64> {
    if x < 1 {
        return Err(Error::Domain(format!("need x ≥ 1, got {x}")));
    }
    let mut sum = 0.0;
    let amax = crate::primes::isqrt_i128(4 * x / 3) + 1;
    for a in -amax..=amax {
        for b in -amax..=amax {
            if (a, b) == (0, 0) {
                continue;
            }
            let n = a * a - a * b + b * b;
            if n <= x {
                sum += 1.0 / n as f64;
            }
        }
    }
    Ok(sum / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::primary_associate;

    fn e(a: i128, b: i128) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    fn prim(a: i128, b: i128) -> PrimaryElement {
        primary_associate(&e(a, b)).unwrap()
    }

    #[test]
    fn family_at_one_is_empty() {
        let table = PrimeTable::sieve(10).unwrap();
        assert!(enumerate_family(1, &table).unwrap().is_empty());
    }

    #[test]
    fn family_counts_at_reference_bounds() {
        let table = PrimeTable::sieve(2000).unwrap();
        assert_eq!(enumerate_family(100, &table).unwrap().len(), 10);
        assert_eq!(enumerate_family(500, &table).unwrap().len(), 54);
        assert_eq!(enumerate_family(1000, &table).unwrap().len(), 136);
        assert_eq!(enumerate_family(2000, &table).unwrap().len(), 264);
    }

    #[test]
    fn members_pass_the_membership_predicate() {
        let table = PrimeTable::sieve(500).unwrap();
        let fam = enumerate_family(500, &table).unwrap();
        for f in &fam {
            let c1 = f.c1().value();
            let c2 = f.c2().value();
            assert_eq!(gcd(&c1, &c2).unwrap(), EisensteinInt::ONE);
            assert!(table.factor(&f.c1()).unwrap().is_squarefree());
            assert!(table.factor(&f.c2()).unwrap().is_squarefree());
            let c = f.c().value();
            assert_eq!(c.a().rem_euclid(9), 1);
            assert_eq!(c.b().rem_euclid(9), 0);
            assert_ne!(c, EisensteinInt::ONE);
            assert_eq!(
                f.conductor_norm(),
                f.q().norm().unwrap(),
                "conductor norm is N(c1 c2)"
            );
            assert!(f.conductor_norm() <= 500);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_pair_scan() {
        let x = 2000i128;
        let table = PrimeTable::sieve(x).unwrap();
        let fam = enumerate_family(x, &table).unwrap();
        let got: std::collections::BTreeSet<(i128, i128, i128, i128)> = fam
            .iter()
            .map(|f| {
                (
                    f.c1().value().a(),
                    f.c1().value().b(),
                    f.c2().value().a(),
                    f.c2().value().b(),
                )
            })
            .collect();

        // Brute force: all primary squarefree pairs with coprime parts.
        let mut primaries = Vec::new();
        let amax = crate::primes::isqrt_i128(4 * x / 3) + 1;
        for a in -amax..=amax {
            for b in -amax..=amax {
                let z = e(a, b);
                if !z.is_primary() {
                    continue;
                }
                let n = z.norm().unwrap();
                if n < 1 || n > x {
                    continue;
                }
                let p = PrimaryElement::from_primary(z).unwrap();
                if table.factor(&p).unwrap().is_squarefree() {
                    primaries.push((p, n));
                }
            }
        }
        let mut brute = std::collections::BTreeSet::new();
        for (c1, n1) in &primaries {
            for (c2, n2) in &primaries {
                if n1 * n2 > x {
                    continue;
                }
                if gcd(&c1.value(), &c2.value()).unwrap() != EisensteinInt::ONE {
                    continue;
                }
                if FamilyElement::from_parts(*c1, *c2).is_some() {
                    brute.insert((
                        c1.value().a(),
                        c1.value().b(),
                        c2.value().a(),
                        c2.value().b(),
                    ));
                }
            }
        }
        assert_eq!(got, brute);

        // Prefix property: smaller bounds are conductor-filtered versions.
        for smaller in [100, 500, 1000] {
            let sub = enumerate_family(smaller, &table).unwrap();
            let filtered: Vec<_> = fam
                .iter()
                .filter(|f| f.conductor_norm() <= smaller)
                .collect();
            assert_eq!(sub.len(), filtered.len());
        }
    }

    #[test]
    fn output_is_sorted_and_duplicate_free() {
        let table = PrimeTable::sieve(1000).unwrap();
        let fam = enumerate_family(1000, &table).unwrap();
        for w in fam.windows(2) {
            assert!(w[0].key() < w[1].key());
        }
    }

    #[test]
    fn conjugation_closure_and_even_size() {
        let table = PrimeTable::sieve(1000).unwrap();
        let fam = enumerate_family(1000, &table).unwrap();
        let keys: std::collections::HashSet<_> = fam.iter().map(|f| f.key()).collect();
        for f in &fam {
            let conj = f.conjugate().unwrap();
            assert!(keys.contains(&conj.key()), "conjugate of {:?} missing", f.key());
            assert_ne!(conj.key(), f.key(), "family has no self-conjugate members");
        }
        assert_eq!(fam.len() % 2, 0);
    }

    #[test]
    fn hecke_condition_on_units_and_ramified() {
        let table = PrimeTable::sieve(500).unwrap();
        for f in enumerate_family(500, &table).unwrap() {
            assert_eq!(f.chi(&EisensteinInt::OMEGA).unwrap(), CubicSymbol::Root(0));
            assert_eq!(
                f.chi(&EisensteinInt::ONE_MINUS_OMEGA).unwrap(),
                CubicSymbol::Root(0)
            );
            assert_eq!(f.chi(&e(-1, 0)).unwrap(), CubicSymbol::Root(0));
        }
    }

    #[test]
    fn chi_of_cubes_is_trivial_and_conjugation_flips() {
        let table = PrimeTable::sieve(500).unwrap();
        let fam = enumerate_family(500, &table).unwrap();
        for f in fam.iter().take(20) {
            for alpha in [e(2, 1), e(5, 0), e(-1, 3), e(4, -1)] {
                let cube = alpha.pow(3).unwrap();
                let s = f.chi(&cube).unwrap();
                if !s.is_zero() {
                    assert_eq!(s, CubicSymbol::Root(0));
                }
                let lhs = f.conjugate().unwrap().chi(&alpha).unwrap();
                assert_eq!(lhs, f.chi(&alpha).unwrap().conj());
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_pairs() {
        let table = PrimeTable::sieve(500).unwrap();
        // Shared factor.
        let p = prim(1, 3);
        assert!(FamilyElement::new(p, p, &table).is_err());
        // Not squarefree.
        let sq = p.mul(&p).unwrap();
        assert!(FamilyElement::new(sq, PrimaryElement::ONE, &table).is_err());
        // Mod-9 violation: c1 = 1+3ω, c2 = 1 gives c = (1+3ω)² = -8+9... check.
        assert!(FamilyElement::new(p, PrimaryElement::ONE, &table).is_err());
        // c = 1 (both parts trivial).
        assert!(FamilyElement::new(PrimaryElement::ONE, PrimaryElement::ONE, &table).is_err());
    }

    #[test]
    fn family_cache_round_trips() {
        let table = PrimeTable::sieve(300).unwrap();
        let dir = std::env::temp_dir().join(format!("clm-family-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let fresh = enumerate_family_cached(300, &table, Some(&dir)).unwrap();
        let cached = enumerate_family_cached(300, &table, Some(&dir)).unwrap();
        assert_eq!(fresh, cached);
        assert_eq!(fresh, enumerate_family(300, &table).unwrap());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn euler_product_constants_at_n_equal_one() {
        let table = PrimeTable::sieve(1_000_000).unwrap();
        let k = family_size_constants(&PrimaryElement::ONE, 1e-4, &table).unwrap();
        assert!((k.f_value - 0.6953865847).abs() < 2e-5);
        assert!((k.c1 - 0.01255270324).abs() < 5e-7);
        assert!(k.tail_bound <= 1e-4);
    }

    #[test]
    fn local_factor_identity() {
        // 1 − 3/N² + 2/N³ = (1 − 1/N)²(1 + 2/N), so the coprime factor always
        // exceeds the divisor factor: C₁(n) < C₁(1) for n ≠ 1.
        let table = PrimeTable::sieve(100_000).unwrap();
        let base = family_size_constants(&PrimaryElement::ONE, 1e-3, &table).unwrap();
        for n in [prim(1, 3), prim(2, 0), prim(4, 3).mul(&prim(2, 0)).unwrap()] {
            let k = family_size_constants(&n, 1e-3, &table).unwrap();
            assert!(k.c1 < base.c1, "C1({}) must drop", n.value());
            let mut expect = base.f_value;
            for (p, _) in table.factor(&n).unwrap().factors() {
                let nn = p.norm() as f64;
                expect /= 1.0 + 2.0 / nn;
            }
            assert!((k.f_value - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn two_truncations_agree_within_tail_bound() {
        let small = PrimeTable::sieve(10_000).unwrap();
        let large = PrimeTable::sieve(1_000_000).unwrap();
        let a = family_size_constants(&PrimaryElement::ONE, 1e-3, &small).unwrap();
        let b = family_size_constants(&PrimaryElement::ONE, 1e-3, &large).unwrap();
        assert!((a.f_value - b.f_value).abs() / b.f_value <= a.tail_bound);
    }

    #[test]
    fn tolerance_beyond_sieve_is_a_capacity_error() {
        let table = PrimeTable::sieve(1000).unwrap();
        let err = family_size_constants(&PrimaryElement::ONE, 1e-9, &table).unwrap_err();
        assert!(matches!(err, Error::SieveCapacity { .. }));
    }

    #[test]
    fn zeta_sq_derivative_estimate_is_stable() {
        let est = estimate_zeta_sq_derivative(1_000_000).unwrap();
        assert!((est - DEFAULT_ZETA_SQ_DERIVATIVE).abs() < 1e-4);
        let c = family_size_constants(
            &PrimaryElement::ONE,
            1e-3,
            &PrimeTable::sieve(100_000).unwrap(),
        )
        .unwrap();
        // C₂(1) is finite and uses both explicit constants.
        let c2 = c.c2(DEFAULT_ZETA_SQ_DERIVATIVE);
        assert!(c2.is_finite());
        assert!(c2 > 0.0);
    }

    #[test]
    fn character_sums_with_trivial_and_cubic_moduli() {
        let table = PrimeTable::sieve(1000).unwrap();
        let fam = enumerate_family(1000, &table).unwrap();
        let rep = character_sum_over_family(&PrimaryElement::ONE, &fam, 1000).unwrap();
        assert_eq!(rep.coprime_count, fam.len() as u64);
        assert!((rep.sum.re - fam.len() as f64).abs() < 1e-9);
        assert!(rep.sum.im.abs() < 1e-9);

        // Cube of a prime: principal character on coprime members.
        let p = prim(1, 3);
        let cube = p.mul(&p).unwrap().mul(&p).unwrap();
        let rep = character_sum_over_family(&cube, &fam, 1000).unwrap();
        let coprime = fam
            .iter()
            .filter(|f| {
                gcd(&f.c().value(), &cube.value()).unwrap() == EisensteinInt::ONE
            })
            .count() as u64;
        assert_eq!(rep.coprime_count, coprime);
        assert!((rep.sum.re - coprime as f64).abs() < 1e-9);
        assert!(rep.sum.im.abs() < 1e-9);
    }

    #[test]
    fn nontrivial_character_sums_cancel() {
        let table = PrimeTable::sieve(100_000).unwrap();
        let fam = enumerate_family(100_000, &table).unwrap();
        let rep = character_sum_over_family(&prim(1, 3), &fam, 100_000).unwrap();
        assert!(
            rep.normalized <= 10.0,
            "cancellation diagnostic blew past threshold: {}",
            rep.normalized
        );
    }
}
