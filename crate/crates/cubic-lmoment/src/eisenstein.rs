//! Exact arithmetic in Z[ω], ω = e^{2πi/3}, the ring of integers of Q(√−3).
//!
//! Elements are stored as integer pairs (a, b) meaning a + bω, with
//! N(a + bω) = a² − ab + b². The ring is Euclidean for this norm, has class
//! number one, and unit group {±1, ±ω, ±ω²}. Every element of norm coprime
//! to 3 has a unique *primary* associate, i.e. one congruent to 1 mod 3;
//! primary elements are the canonical generators used throughout the crate.
//!
//! All arithmetic is checked: operations that would leave the i128 range
//! return `Error::ArithmeticOverflow` instead of wrapping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An element a + bω of Z[ω].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    a: i128,
    b: i128,
}

impl std::fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}ω)", self.a, self.b)
    }
}

impl std::fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}ω", self.a, self.b)
    }
}

fn ck(v: Option<i128>, what: &'static str) -> Result<i128> {
    v.ok_or(Error::ArithmeticOverflow(what))
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    /// ω itself.
    pub const OMEGA: Self = Self { a: 0, b: 1 };
    /// The ramified prime 1 − ω lying above 3.
    pub const ONE_MINUS_OMEGA: Self = Self { a: 1, b: -1 };

    pub const fn new(a: i128, b: i128) -> Self {
        Self { a, b }
    }

    pub const fn a(&self) -> i128 {
        self.a
    }

    pub const fn b(&self) -> i128 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// N(a + bω) = a² − ab + b² ≥ 0, with equality iff the element is zero.
    pub fn norm(&self) -> Result<i128> {
        let aa = ck(self.a.checked_mul(self.a), "norm a*a")?;
        let ab = ck(self.a.checked_mul(self.b), "norm a*b")?;
        let bb = ck(self.b.checked_mul(self.b), "norm b*b")?;
        ck(
            ck(aa.checked_sub(ab), "norm a*a-a*b")?.checked_add(bb),
            "norm total",
        )
    }

    /// Complex conjugate: a + bω ↦ (a − b) − bω, since ω̄ = ω².
    pub fn conj(&self) -> Result<Self> {
        Ok(Self {
            a: ck(self.a.checked_sub(self.b), "conj")?,
            b: ck(self.b.checked_neg(), "conj neg")?,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            a: ck(self.a.checked_add(rhs.a), "add")?,
            b: ck(self.b.checked_add(rhs.b), "add")?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            a: ck(self.a.checked_sub(rhs.a), "sub")?,
            b: ck(self.b.checked_sub(rhs.b), "sub")?,
        })
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(Self {
            a: ck(self.a.checked_neg(), "neg")?,
            b: ck(self.b.checked_neg(), "neg")?,
        })
    }

    /// (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω, using ω² = −1 − ω.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let ac = ck(self.a.checked_mul(rhs.a), "mul a*c")?;
        let bd = ck(self.b.checked_mul(rhs.b), "mul b*d")?;
        let ad = ck(self.a.checked_mul(rhs.b), "mul a*d")?;
        let bc = ck(self.b.checked_mul(rhs.a), "mul b*c")?;
        Ok(Self {
            a: ck(ac.checked_sub(bd), "mul re")?,
            b: ck(
                ck(ad.checked_add(bc), "mul im")?.checked_sub(bd),
                "mul im",
            )?,
        })
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut base = *self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// True iff `self` divides `z` exactly.
    pub fn divides(&self, z: &Self) -> Result<bool> {
        Ok(self.div_exact(z)?.is_some())
    }

    /// `z / self` when the division is exact, `None` otherwise.
    /// Uses z·conj(self) / N(self), which is integral iff self | z.
    pub fn div_exact(&self, z: &Self) -> Result<Option<Self>> {
        let n = self.norm()?;
        if n == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        let w = z.mul(&self.conj()?)?;
        if w.a % n == 0 && w.b % n == 0 {
            Ok(Some(Self {
                a: w.a / n,
                b: w.b / n,
            }))
        } else {
            Ok(None)
        }
    }

    /// Nearest-lattice-point remainder: returns r = self − q·n with
    /// q the coordinate-wise rounding of self/n. Always N(r) ≤ (3/4)·N(n).
    pub fn reduce_mod(&self, n: &Self) -> Result<Self> {
        let nn = n.norm()?;
        if nn == 0 {
            return Err(Error::Domain("reduction modulo zero".into()));
        }
        let w = self.mul(&n.conj()?)?;
        let qa = div_round_half_up(w.a, nn)?;
        let qb = div_round_half_up(w.b, nn)?;
        let q = Self { a: qa, b: qb };
        self.sub(&q.mul(n)?)
    }

    /// a + bω ≡ 1 (mod 3), the normalization condition for canonical generators.
    pub fn is_primary(&self) -> bool {
        (self.a - 1).rem_euclid(3) == 0 && self.b.rem_euclid(3) == 0
    }

    pub fn is_unit(&self) -> bool {
        Unit::from_element(self).is_some()
    }

    /// All six associates u·self, in the fixed unit order of [`Unit::ALL`].
    pub fn associates(&self) -> Result<[Self; 6]> {
        let mut out = [Self::ZERO; 6];
        for (i, u) in Unit::ALL.iter().enumerate() {
            out[i] = self.mul(&u.value())?;
        }
        Ok(out)
    }
}

fn div_round_half_up(n: i128, d: i128) -> Result<i128> {
    debug_assert!(d > 0);
    let q = n.div_euclid(d);
    let r = n.rem_euclid(d);
    let twice = ck(r.checked_mul(2), "round")?;
    Ok(if twice >= d { q + 1 } else { q })
}

/// The six units of Z[ω], written ±ω^j.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum Unit {
    One,
    MinusOne,
    Omega,
    MinusOmega,
    OmegaSq,
    MinusOmegaSq,
}

impl Unit {
    pub const ALL: [Unit; 6] = [
        Unit::One,
        Unit::MinusOne,
        Unit::Omega,
        Unit::MinusOmega,
        Unit::OmegaSq,
        Unit::MinusOmegaSq,
    ];

    pub fn value(&self) -> EisensteinInt {
        match self {
            Unit::One => EisensteinInt::new(1, 0),
            Unit::MinusOne => EisensteinInt::new(-1, 0),
            Unit::Omega => EisensteinInt::new(0, 1),
            Unit::MinusOmega => EisensteinInt::new(0, -1),
            Unit::OmegaSq => EisensteinInt::new(-1, -1),
            Unit::MinusOmegaSq => EisensteinInt::new(1, 1),
        }
    }

    pub fn from_element(z: &EisensteinInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.value() == *z)
    }

    /// Power of ω in the decomposition ±ω^j.
    pub fn omega_exponent(&self) -> u8 {
        match self {
            Unit::One | Unit::MinusOne => 0,
            Unit::Omega | Unit::MinusOmega => 1,
            Unit::OmegaSq | Unit::MinusOmegaSq => 2,
        }
    }

    pub fn inverse(&self) -> Unit {
        match self {
            Unit::One => Unit::One,
            Unit::MinusOne => Unit::MinusOne,
            Unit::Omega => Unit::OmegaSq,
            Unit::MinusOmega => Unit::MinusOmegaSq,
            Unit::OmegaSq => Unit::Omega,
            Unit::MinusOmegaSq => Unit::MinusOmega,
        }
    }
}

/// An element known to be ≡ 1 mod 3, together with the unit that was applied
/// to reach it from the original input.
///
/// Equality, ordering, and hashing look only at the value; the remembered
/// unit is provenance, not identity.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PrimaryElement {
    value: EisensteinInt,
    unit: Unit,
}

impl PartialEq for PrimaryElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for PrimaryElement {}

impl std::hash::Hash for PrimaryElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for PrimaryElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimaryElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl PrimaryElement {
    /// Wraps an element that is already primary.
    pub fn from_primary(value: EisensteinInt) -> Result<Self> {
        if value.is_primary() {
            Ok(Self {
                value,
                unit: Unit::One,
            })
        } else {
            Err(Error::NotPrimaryizable {
                a: value.a(),
                b: value.b(),
            })
        }
    }

    pub const ONE: Self = Self {
        value: EisensteinInt::ONE,
        unit: Unit::One,
    };

    pub fn value(&self) -> EisensteinInt {
        self.value
    }

    /// The unit u with u·(original input) = value.
    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn norm(&self) -> Result<i128> {
        self.value.norm()
    }

    pub fn is_one(&self) -> bool {
        self.value == EisensteinInt::ONE
    }

    /// Product of two primary elements, itself primary.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let value = self.value.mul(&rhs.value)?;
        debug_assert!(value.is_primary());
        Ok(Self {
            value,
            unit: Unit::One,
        })
    }

    /// Primary associate of the conjugate (the conjugate of a primary element
    /// is again primary).
    pub fn conj(&self) -> Result<Self> {
        let c = self.value.conj()?;
        debug_assert!(c.is_primary());
        Ok(Self {
            value: c,
            unit: Unit::One,
        })
    }
}

/// The unique associate u·z ≡ 1 mod 3 of an element with norm coprime to 3.
///
/// Errors with `NotPrimaryizable` when z = 0 or 3 | N(z).
pub fn primary_associate(z: &EisensteinInt) -> Result<PrimaryElement> {
    if z.is_zero() {
        return Err(Error::NotPrimaryizable { a: 0, b: 0 });
    }
    let mut found: Option<(EisensteinInt, Unit)> = None;
    for u in Unit::ALL {
        let w = z.mul(&u.value())?;
        if w.is_primary() {
            debug_assert!(found.is_none(), "primary associate must be unique");
            found = Some((w, u));
            #[cfg(not(debug_assertions))]
            break;
        }
    }
    match found {
        Some((value, unit)) => Ok(PrimaryElement { value, unit }),
        None => Err(Error::NotPrimaryizable { a: z.a(), b: z.b() }),
    }
}

/// Euclidean gcd, canonically normalized: primary associate when the gcd is
/// coprime to 3, otherwise the lexicographically smallest (a, b) among the six
/// associates. gcd(0, 0) is undefined.
pub fn gcd(z1: &EisensteinInt, z2: &EisensteinInt) -> Result<EisensteinInt> {
    if z1.is_zero() && z2.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let mut u = *z1;
    let mut v = *z2;
    while !v.is_zero() {
        let r = u.reduce_mod(&v)?;
        u = v;
        v = r;
    }
    canonical_associate(&u)
}

fn canonical_associate(z: &EisensteinInt) -> Result<EisensteinInt> {
    if z.norm()? % 3 != 0 {
        Ok(primary_associate(z)?.value())
    } else {
        let mut best: Option<EisensteinInt> = None;
        for w in z.associates()? {
            best = Some(match best {
                None => w,
                Some(b) if (w.a(), w.b()) < (b.a(), b.b()) => w,
                Some(b) => b,
            });
        }
        Ok(best.unwrap())
    }
}

/// Complete residue system mod n as {x + yω : 0 ≤ x < d₁, 0 ≤ y < d₂} with
/// d₁d₂ = N(n), from the Hermite normal form of the lattice nZ[ω].
///
/// The lattice is spanned (in (1, ω) coordinates) by n = (a, b) and
/// nω = (−b, a−b); eliminating the ω-coordinate gives the pure-integer
/// generator (N(n)/g, 0) with g = gcd(b, a−b), and a second generator with
/// ω-coordinate exactly g.
pub fn residues_mod(n: &PrimaryElement, cap: i128) -> Result<Vec<EisensteinInt>> {
    let nrm = n.norm()?;
    if nrm > cap {
        return Err(Error::ResidueSystemTooLarge { size: nrm, cap });
    }
    let (a, b) = (n.value().a(), n.value().b());
    let g = int_gcd(b, a - b);
    let d2 = if g == 0 { 1 } else { g };
    let d1 = nrm / d2;
    let mut out = Vec::with_capacity(nrm as usize);
    for y in 0..d2 {
        for x in 0..d1 {
            out.push(EisensteinInt::new(x, y));
        }
    }
    Ok(out)
}

pub(crate) fn int_gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
