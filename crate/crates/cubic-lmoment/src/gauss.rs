//! Cubic Gauss sums g(r, n) and root numbers W(χ_c).
//!
//! The direct route sums χ_n(α)·e(tr(rα/n)) over a full residue system,
//! costing O(N(n)) symbol evaluations; it is the oracle everything else is
//! checked against. The fast route factors n once and assembles the sum from
//! prime-power pieces via twisted multiplicativity
//! g(r, n₁n₂) = g(rn₁, n₂)·g(r, n₁) and the prime-power case table
//! (k = j+1 gives ±N(π)^j·g(1,π)^{±1}, k ≤ j with 3 | k gives φ_K(π^k),
//! everything else vanishes), so only g(1, π) at prime moduli is ever summed
//! literally.
//!
//! Phases are computed as exact rationals: tr(rα/n) = (2x − y)/N(n) with
//! x + yω = rα·conj(n), reduced mod N(n) in integers before the only floating
//! operation, the complex exponential.

use crate::eisenstein::{EisensteinInt, PrimaryElement};
use crate::error::{Error, Result};
use crate::family::FamilyElement;
use crate::primes::{EisensteinPrime, PrimeTable};
use crate::symbol::{cubic_symbol, CubicSymbol};
use dashmap::DashMap;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Default ceiling for literal residue-system summation.
pub const DIRECT_SUM_CAP: i128 = 100_000;

/// √−3 as the Eisenstein integer 1 + 2ω = ω(1 − ω).
const SQRT_MINUS_THREE: EisensteinInt = EisensteinInt::new(1, 2);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Direct,
    Recurrence,
}

#[derive(Clone, Copy, Debug)]
pub struct GaussSumValue {
    pub value: Complex64,
    pub modulus_norm: i128,
    pub method: Method,
}

/// A root number W(χ_c) together with its unit-modulus normalization
/// ε = W/√n_χ.
#[derive(Clone, Copy, Debug)]
pub struct RootNumber {
    pub value: Complex64,
    pub normalized: Complex64,
}

/// Shared evaluation context: the prime table for factoring, the direct-sum
/// cap, and concurrent memo tables. Values are deterministic, so racing
/// writers on the same key are benign.
pub struct GaussContext<'a> {
    table: &'a PrimeTable,
    direct_cap: i128,
    prime_sums: DashMap<(i128, i128), Complex64>,
    sums: DashMap<(i128, i128, i128, i128), Complex64>,
}

/// g(r, n) by literal summation over a residue system mod n, with the
/// default cap.
pub fn gauss_direct(r: &EisensteinInt, n: &PrimaryElement) -> Result<GaussSumValue> {
    gauss_direct_capped(r, n, DIRECT_SUM_CAP)
}

/// g(r, n) by literal summation, with an explicit size cap.
pub fn gauss_direct_capped(
    r: &EisensteinInt,
    n: &PrimaryElement,
    cap: i128,
) -> Result<GaussSumValue> {
    let nn = n.norm()?;
    if nn > cap {
        return Err(Error::DirectSumTooLarge { size: nn, cap });
    }
    let nv = n.value();
    let nconj = nv.conj()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for alpha in crate::eisenstein::residues_mod(n, cap)? {
        let chi = cubic_symbol(&alpha, n)?;
        if chi.is_zero() {
            continue;
        }
        let w = r.mul(&alpha)?.mul(&nconj)?;
        let num = (2 * w.a() - w.b()).rem_euclid(nn);
        let angle = TAU * (num as f64) / (nn as f64);
        acc += chi.to_complex() * Complex64::from_polar(1.0, angle);
    }
    Ok(GaussSumValue {
        value: acc,
        modulus_norm: nn,
        method: Method::Direct,
    })
}

impl<'a> GaussContext<'a> {
    pub fn new(table: &'a PrimeTable) -> Self {
        Self::with_cap(table, DIRECT_SUM_CAP)
    }

    pub fn with_cap(table: &'a PrimeTable, direct_cap: i128) -> Self {
        Self {
            table,
            direct_cap,
            prime_sums: DashMap::new(),
            sums: DashMap::new(),
        }
    }

    pub fn table(&self) -> &PrimeTable {
        self.table
    }

    /// g(1, π) at a prime modulus, summed literally and memoized.
    fn prime_gauss(&self, pi: &EisensteinPrime) -> Result<Complex64> {
        let key = (pi.element().value().a(), pi.element().value().b());
        if let Some(v) = self.prime_sums.get(&key) {
            return Ok(*v);
        }
        let g = gauss_direct_capped(&EisensteinInt::ONE, &pi.element(), self.direct_cap)?.value;
        self.prime_sums.insert(key, g);
        Ok(g)
    }

    /// g(r, π^k) from the prime-power case table.
    fn prime_power_gauss(&self, r: &EisensteinInt, pi: &EisensteinPrime, k: u32) -> Result<Complex64> {
        let p = pi.element().value();
        let np = pi.norm() as f64;
        let phi_k = |k: u32| np.powi(k as i32 - 1) * (np - 1.0);
        if r.is_zero() {
            // Plain character sum: φ_K(π^k) when the character is principal.
            return Ok(if k % 3 == 0 {
                Complex64::new(phi_k(k), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            });
        }
        // r = π^j · s with (s, π) = 1.
        let mut j: u32 = 0;
        let mut s = *r;
        while let Some(q) = p.div_exact(&s)? {
            s = q;
            j += 1;
        }
        if k != j + 1 {
            return Ok(if k % 3 == 0 && k <= j {
                Complex64::new(phi_k(k), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            });
        }
        // k = j + 1. Twist the unit/non-primary part of s out first:
        // g(π^j·s, π^k) = χ̄_{π^k}(s)·g(π^j, π^k).
        let twist = cubic_symbol(&s, &pi.element())?.pow(k).conj();
        debug_assert!(!twist.is_zero());
        let base = match k % 3 {
            0 => Complex64::new(-1.0, 0.0),
            1 => self.prime_gauss(pi)?,
            _ => self.prime_gauss(pi)?.conj(),
        };
        Ok(twist.to_complex() * np.powi(j as i32) * base)
    }

    /// g(r, n) assembled multiplicatively from the factorization of n.
    pub fn fast(&self, r: &EisensteinInt, n: &PrimaryElement) -> Result<GaussSumValue> {
        let nn = n.norm()?;
        let canon = r.reduce_mod(&n.value())?;
        let key = (canon.a(), canon.b(), n.value().a(), n.value().b());
        if let Some(v) = self.sums.get(&key) {
            return Ok(GaussSumValue {
                value: *v,
                modulus_norm: nn,
                method: Method::Recurrence,
            });
        }
        let factorization = self.table.factor(n)?;
        let mut acc = Complex64::new(1.0, 0.0);
        let mut partial = EisensteinInt::ONE;
        for (pi, k) in factorization.factors() {
            // g(r, m·π^k) = g(r·m, π^k) · g(r, m)
            let r_eff = r.mul(&partial)?;
            acc *= self.prime_power_gauss(&r_eff, pi, *k)?;
            partial = partial.mul(&pi.element().value().pow(*k)?)?;
        }
        self.sums.insert(key, acc);
        Ok(GaussSumValue {
            value: acc,
            modulus_norm: nn,
            method: Method::Recurrence,
        })
    }

    /// W(χ_c) = conj(g(1, c₁))·g(1, c₂), with its normalization.
    pub fn root_number(&self, c: &FamilyElement) -> Result<RootNumber> {
        let one = EisensteinInt::ONE;
        let g1 = self.fast(&one, &c.c1())?.value;
        let g2 = self.fast(&one, &c.c2())?.value;
        let value = g1.conj() * g2;
        let normalized = value / (c.conductor_norm() as f64).sqrt();
        Ok(RootNumber { value, normalized })
    }

    /// W(χ_c) straight from its definition: the character sum over residues
    /// mod the conductor with phase tr(x/(q√−3)), using the primary
    /// generator. Oracle for [`Self::root_number`].
    pub fn root_number_definition(&self, c: &FamilyElement) -> Result<Complex64> {
        self.root_number_definition_with_generator(c, &c.q().value())
    }

    /// Same sum with an arbitrary generator m of the conductor ideal.
    pub fn root_number_definition_with_generator(
        &self,
        c: &FamilyElement,
        m: &EisensteinInt,
    ) -> Result<Complex64> {
        let q = c.q();
        let nq = q.norm()?;
        if nq > self.direct_cap {
            return Err(Error::DirectSumTooLarge {
                size: nq,
                cap: self.direct_cap,
            });
        }
        debug_assert_eq!(m.norm()?, nq, "generator must generate the conductor");
        let denom = m.mul(&SQRT_MINUS_THREE)?;
        let dn = denom.norm()?; // = 3·N(q)
        let dconj = denom.conj()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for x in crate::eisenstein::residues_mod(&q, self.direct_cap)? {
            let chi = c.chi(&x)?;
            if chi.is_zero() {
                continue;
            }
            let w = x.mul(&dconj)?;
            let num = (2 * w.a() - w.b()).rem_euclid(dn);
            let angle = TAU * (num as f64) / (dn as f64);
            acc += chi.to_complex() * Complex64::from_polar(1.0, angle);
        }
        Ok(acc)
    }
}

/// χ_n(s) for use in the twist identity g(rs, n) = χ̄_n(s)·g(r, n).
pub fn chi_bar(s: &EisensteinInt, n: &PrimaryElement) -> Result<CubicSymbol> {
    Ok(cubic_symbol(s, n)?.conj())
}
