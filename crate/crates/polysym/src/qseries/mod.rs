//! Sparse truncated multivariate Laurent series with exact integer coefficients.
//!
//! All generating functions in this crate live in the ring
//! `Z[t^±, x^±, y^±, s^±, u^±, v^±, z^±, w^±][[q]] / (q^{qmax+1})`:
//! the distinguished variable `q` (which always marks area) is truncated at a
//! fixed order, carries no negative powers, and every other variable may
//! appear with negative exponents in intermediate results. A
//! [`TruncationSpec`] fixes the `q`-order, the set of admissible variables,
//! and optional absolute-value caps on non-`q` exponents; two series combine
//! only when their specs are identical.
//!
//! Invariants maintained by every constructor and operation:
//!
//! * stored coefficients are never zero;
//! * every stored exponent vector is admitted by the spec (`q`-exponent in
//!   `0..=qmax`, capped variables within their caps, no variable outside the
//!   spec's set);
//! * exponents stay far below the defensive hard cap of `4 * qmax` in
//!   absolute value — breaching it indicates a bug, not bad input, and
//!   panics.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) mod fmt_impl;
mod subst;

pub use subst::Image;

/// Coefficient type: exact, arbitrary-precision integers.
pub type Coeff = BigInt;

/// The nine admissible variables, in canonical serialization order.
///
/// `q` always marks area. The discriminant doubles as the index into an
/// exponent vector, so the derived `Ord` on [`ExpVec`] is the lexicographic
/// order on `(t, x, y, q, s, u, v, z, w)` exponents.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Var {
    /// Half-perimeter marker in specialized series.
    T = 0,
    /// Width marker (number of columns).
    X = 1,
    /// Height marker (number of rows).
    Y = 2,
    /// Area marker; truncation variable.
    Q = 3,
    /// Catalytic marker (left-column or bottom-row statistics).
    S = 4,
    /// Catalytic marker (top-row statistics in staircase constructions).
    U = 5,
    /// Catalytic marker (bottom-width in marked directed series).
    V = 6,
    /// First diagonal marker.
    Z = 7,
    /// Second diagonal marker.
    W = 8,
}

impl Var {
    /// All variables in canonical order.
    pub const ALL: [Var; 9] = [
        Var::T,
        Var::X,
        Var::Y,
        Var::Q,
        Var::S,
        Var::U,
        Var::V,
        Var::Z,
        Var::W,
    ];

    /// Position in the canonical order.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Lower-case one-letter name.
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
            Var::Q => "q",
            Var::S => "s",
            Var::U => "u",
            Var::V => "v",
            Var::Z => "z",
            Var::W => "w",
        }
    }

    /// Inverse of [`Var::name`].
    pub fn parse(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector of a monomial, indexed by [`Var`] in canonical order.
///
/// The derived `Ord` is lexicographic in canonical variable order, which is
/// exactly the term order used for text output and serialization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct ExpVec([i32; 9]);

impl ExpVec {
    /// The all-zero exponent vector (the constant monomial).
    pub const ZERO: ExpVec = ExpVec([0; 9]);

    /// Builds an exponent vector from `(variable, exponent)` pairs.
    /// Repeated variables accumulate additively.
    pub fn of(pairs: &[(Var, i32)]) -> ExpVec {
        let mut e = ExpVec::ZERO;
        for &(v, k) in pairs {
            e.0[v.index()] += k;
        }
        e
    }

    /// Exponent of `v`.
    #[inline]
    pub fn get(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    /// Exponent of `q`.
    #[inline]
    pub fn q(&self) -> i32 {
        self.0[Var::Q.index()]
    }

    /// Copy with the exponent of `v` replaced.
    pub fn with(mut self, v: Var, e: i32) -> ExpVec {
        self.0[v.index()] = e;
        self
    }

    /// Componentwise sum (monomial product).
    #[inline]
    pub fn plus(&self, other: &ExpVec) -> ExpVec {
        let mut out = *self;
        for i in 0..9 {
            out.0[i] += other.0[i];
        }
        out
    }

    /// Componentwise multiple (monomial power `self^k`).
    pub fn scaled(&self, k: i32) -> ExpVec {
        let mut out = *self;
        for i in 0..9 {
            out.0[i] *= k;
        }
        out
    }

    /// True if this is the constant monomial.
    pub fn is_zero(&self) -> bool {
        self.0 == [0; 9]
    }

    /// The variables with nonzero exponent, in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        Var::ALL
            .iter()
            .filter_map(move |&v| match self.0[v.index()] {
                0 => None,
                e => Some((v, e)),
            })
    }
}

/// Truncation contract for a series: its variable set, the mandatory cutoff
/// `qmax` for the area variable, and optional absolute-value caps for other
/// variables.
///
/// Caps exist for series (like unbounded stacks of rows) that are not finite
/// in a non-`q` variable at fixed area; capping such a variable makes the
/// truncated object finite while leaving every retained coefficient exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncationSpec {
    varmask: u16,
    qmax: u32,
    caps: [Option<u32>; 9],
}

impl TruncationSpec {
    /// Creates a spec over the given variables, truncated at `q^qmax`.
    /// `q` itself is always part of the variable set.
    pub fn new(qmax: u32, vars: &[Var]) -> TruncationSpec {
        let mut mask = 1u16 << Var::Q.index();
        for &v in vars {
            mask |= 1 << v.index();
        }
        TruncationSpec {
            varmask: mask,
            qmax,
            caps: [None; 9],
        }
    }

    /// Adds an absolute-value cap for a non-`q` variable.
    ///
    /// # Panics
    /// If `v` is `q` (its bound is `qmax`) or not in the variable set.
    pub fn with_cap(mut self, v: Var, cap: u32) -> TruncationSpec {
        assert!(v != Var::Q, "the q bound is qmax, not a cap");
        assert!(self.contains_var(v), "cap on a variable outside the spec");
        self.caps[v.index()] = Some(cap);
        self
    }

    /// The truncation order: terms with `q`-exponent above this are dropped.
    #[inline]
    pub fn qmax(&self) -> u32 {
        self.qmax
    }

    /// The cap on `|exponent|` of `v`, if any.
    pub fn cap(&self, v: Var) -> Option<u32> {
        self.caps[v.index()]
    }

    /// Whether `v` belongs to the variable set.
    #[inline]
    pub fn contains_var(&self, v: Var) -> bool {
        self.varmask & (1 << v.index()) != 0
    }

    /// The variable set in canonical order.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.iter().copied().filter(|&v| self.contains_var(v))
    }

    /// Same spec without `v` (and without its cap). Used when a variable is
    /// eliminated by coefficient extraction or evaluation at 1.
    pub fn without_var(&self, v: Var) -> TruncationSpec {
        assert!(v != Var::Q, "q cannot be removed from a spec");
        let mut out = self.clone();
        out.varmask &= !(1 << v.index());
        out.caps[v.index()] = None;
        out
    }

    /// Same spec with `v` added to the variable set.
    pub fn with_var(&self, v: Var) -> TruncationSpec {
        let mut out = self.clone();
        out.varmask |= 1 << v.index();
        out
    }

    /// Same spec with every cap removed.
    pub fn without_caps(&self) -> TruncationSpec {
        TruncationSpec {
            varmask: self.varmask,
            qmax: self.qmax,
            caps: [None; 9],
        }
    }

    /// Classifies an exponent vector: `Ok(true)` it is stored, `Ok(false)` it
    /// is truncated away, `Err` it violates the contract (negative `q` or a
    /// variable outside the set).
    ///
    /// # Panics
    /// If an exponent exceeds the defensive hard cap `4 * qmax` in absolute
    /// value; that indicates an internal bug.
    pub fn admits(&self, e: &ExpVec) -> Result<bool> {
        let hard = 4 * self.qmax.max(1) as i64;
        for (v, k) in e.nonzero() {
            assert!(
                (k as i64).abs() <= hard,
                "exponent {k} of {v} breached the hard cap {hard}: internal bug"
            );
            if !self.contains_var(v) {
                return Err(Error::InvalidExponent {
                    var: v.name(),
                    exponent: k,
                    reason: "variable is not part of the series' variable set",
                });
            }
            if v == Var::Q {
                if k < 0 {
                    return Err(Error::InvalidExponent {
                        var: v.name(),
                        exponent: k,
                        reason: "q-exponents must be nonnegative",
                    });
                }
                if k as u32 > self.qmax {
                    return Ok(false);
                }
            } else if let Some(cap) = self.caps[v.index()] {
                if k.unsigned_abs() > cap {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{vars ")?;
        for (i, v) in self.vars().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            if let Some(c) = self.caps[v.index()] {
                write!(f, "≤{c}")?;
            }
        }
        write!(f, "; qmax {}}}", self.qmax)
    }
}

/// A sparse truncated series: a [`TruncationSpec`] plus a map from exponent
/// vectors to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    spec: TruncationSpec,
    terms: HashMap<ExpVec, Coeff>,
}

impl Series {
    // ---- Constructors ----

    /// The zero series.
    pub fn zero(spec: &TruncationSpec) -> Series {
        Series {
            spec: spec.clone(),
            terms: HashMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(spec: &TruncationSpec) -> Series {
        Series::constant(spec, 1)
    }

    /// A constant series.
    pub fn constant(spec: &TruncationSpec, c: impl Into<Coeff>) -> Series {
        let mut s = Series::zero(spec);
        let c = c.into();
        if !c.is_zero() {
            s.terms.insert(ExpVec::ZERO, c);
        }
        s
    }

    /// A single-term series `c * monomial`. Terms outside the spec's caps are
    /// silently truncated to zero; invalid exponents (negative `q`, foreign
    /// variable) are errors.
    pub fn monomial(
        spec: &TruncationSpec,
        c: impl Into<Coeff>,
        exps: &[(Var, i32)],
    ) -> Result<Series> {
        let mut s = Series::zero(spec);
        s.accumulate(ExpVec::of(exps), c.into())?;
        Ok(s)
    }

    /// Builds a series from raw `(exponents, coefficient)` pairs, summing
    /// duplicates and applying truncation.
    pub fn from_terms(
        spec: &TruncationSpec,
        terms: impl IntoIterator<Item = (ExpVec, Coeff)>,
    ) -> Result<Series> {
        let mut s = Series::zero(spec);
        for (e, c) in terms {
            s.accumulate(e, c)?;
        }
        Ok(s)
    }

    // ---- Accessors ----

    /// The truncation spec this series lives under.
    pub fn spec(&self) -> &TruncationSpec {
        &self.spec
    }

    /// Whether the series is identically zero (after truncation).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial with the given exponents (zero when the
    /// monomial is absent or truncated away).
    pub fn coeff(&self, exps: &[(Var, i32)]) -> Coeff {
        self.coeff_exp(&ExpVec::of(exps))
    }

    /// Coefficient of an exponent vector.
    pub fn coeff_exp(&self, e: &ExpVec) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Unordered view of the stored terms.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&ExpVec, &Coeff)> {
        self.terms.iter()
    }

    /// Stored terms in ascending canonical (lexicographic) order.
    pub fn sorted_terms(&self) -> Vec<(ExpVec, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_unstable_by_key(|&(e, _)| e);
        v
    }

    /// Smallest `q`-exponent among stored terms, or `None` for the zero
    /// series.
    pub fn min_q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.q() as u32).min()
    }

    /// Sum of all coefficients whose `q`-exponent equals `k`, over every
    /// combination of the other variables.
    pub fn coeff_sum_at_q(&self, k: u32) -> Coeff {
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            if e.q() == k as i32 {
                acc += c;
            }
        }
        acc
    }

    // ---- Ring operations ----

    /// Sum of two series with identical specs.
    pub fn add(&self, other: &Series) -> Result<Series> {
        self.unify(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, c.clone())?;
        }
        Ok(out)
    }

    /// Difference of two series with identical specs.
    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.unify(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, -c.clone())?;
        }
        Ok(out)
    }

    /// Negation.
    pub fn neg(&self) -> Series {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    /// Multiplication by an integer constant.
    pub fn scale(&self, k: impl Into<Coeff>) -> Series {
        let k = k.into();
        if k.is_zero() {
            return Series::zero(&self.spec);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= &k;
        }
        out
    }

    /// Multiplication by a single monomial `c * m` (cheap re-keying).
    pub fn mul_monomial(&self, c: impl Into<Coeff>, m: &ExpVec) -> Result<Series> {
        let c = c.into();
        let mut out = Series::zero(&self.spec);
        if c.is_zero() {
            return Ok(out);
        }
        for (e, coeff) in &self.terms {
            out.accumulate(e.plus(m), coeff * &c)?;
        }
        Ok(out)
    }

    /// Product of two series with identical specs, truncated.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.unify(other)?;
        let qmax = self.spec.qmax as i32;
        let mut out = Series::zero(&self.spec);
        // Iterate the smaller operand on the outside so per-term overhead is
        // paid fewer times.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ea, ca) in &a.terms {
            let qa = ea.q();
            for (eb, cb) in &b.terms {
                if qa + eb.q() > qmax {
                    continue;
                }
                out.accumulate(ea.plus(eb), ca * cb)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Multiplicative inverse in the truncated ring.
    ///
    /// Requires a constant term of `+1` or `-1` and a positive `q`-exponent
    /// on every other term; anything else is [`Error::NotInvertible`].
    pub fn invert(&self) -> Result<Series> {
        let c0 = self.coeff_exp(&ExpVec::ZERO);
        let sign: i64 = if c0.is_one() {
            1
        } else if (-&c0).is_one() {
            -1
        } else {
            return Err(Error::NotInvertible {
                reason: format!("constant term is {c0}, need +1 or -1"),
            });
        };
        for (e, _) in &self.terms {
            if !e.is_zero() && e.q() < 1 {
                return Err(Error::NotInvertible {
                    reason: format!(
                        "term {} has no positive power of q",
                        fmt_impl::monomial_string(e)
                    ),
                });
            }
        }
        // With a = sign * (1 + g) and every term of g carrying q^{>=1},
        // 1/a = sign * sum_j (-g)^j; the sum is finite because g^j vanishes
        // once j exceeds qmax.
        let one = Series::one(&self.spec);
        let neg_g = one.sub(&self.scale(sign))?;
        let mut acc = one.clone();
        let mut pow = one;
        for _ in 0..self.spec.qmax {
            pow = pow.mul(&neg_g)?;
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow)?;
        }
        Ok(acc.scale(sign))
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Result<Series> {
        let mut out = Series::zero(&self.spec);
        for (e, c) in &self.terms {
            let k = e.get(v);
            if k == 0 {
                continue;
            }
            out.accumulate(e.with(v, k - 1), c * Coeff::from(k))?;
        }
        Ok(out)
    }

    /// Re-truncates into a different spec.
    ///
    /// The new variable set must contain every variable actually used;
    /// terms that the new spec truncates away (deeper `q` cutoff, tighter
    /// caps) are dropped. This is the safe "forgetful" conversion used to
    /// align series computed at different depths and to widen variable sets.
    pub fn retrunc(&self, spec: &TruncationSpec) -> Result<Series> {
        let mut out = Series::zero(spec);
        for (e, c) in &self.terms {
            out.accumulate(*e, c.clone())?;
        }
        Ok(out)
    }

    // ---- Internal plumbing ----

    /// Errors unless the two specs are identical.
    fn unify(&self, other: &Series) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            })
        }
    }

    /// Adds `c` to the coefficient at `e`, honoring truncation and keeping
    /// the no-zero-coefficients invariant.
    fn accumulate(&mut self, e: ExpVec, c: Coeff) -> Result<()> {
        if c.is_zero() || !self.spec.admits(&e)? {
            return Ok(());
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
        Ok(())
    }

    /// Drops any zero coefficients (used after bulk accumulation).
    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }
}

/// The finite product `(1 - a) (1 - a q) (1 - a q^2) ... (1 - a q^{n-1})`
/// for an arbitrary series `a`.
///
/// With `a = y q` this is the familiar row-generating factor
/// `(1-yq)(1-yq^2)...(1-yq^n)`.
pub fn pochhammer(a: &Series, n: u32) -> Result<Series> {
    let one = Series::one(a.spec());
    let mut acc = one.clone();
    for k in 0..n {
        let shifted = a.mul_monomial(1, &ExpVec::of(&[(Var::Q, k as i32)]))?;
        acc = acc.mul(&one.sub(&shifted)?)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

// Operator sugar for internal formula code. These panic on spec mismatch,
// which is always a programming error at the call sites that use them; the
// checked entry points are the named methods.

impl std::ops::Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs).expect("series addition")
    }
}

impl std::ops::Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs).expect("series subtraction")
    }
}

impl std::ops::Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs).expect("series multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_tq(qmax: u32) -> TruncationSpec {
        TruncationSpec::new(qmax, &[Var::T])
    }

    #[test]
    fn monomial_builds_and_reads_back() {
        let spec = spec_tq(6);
        let m = Series::monomial(&spec, 1, &[(Var::T, 2), (Var::Q, 1)]).unwrap();
        assert_eq!(m.coeff(&[(Var::T, 2), (Var::Q, 1)]), Coeff::from(1));
        assert_eq!(m.num_terms(), 1);
    }

    #[test]
    fn negative_q_is_rejected() {
        let spec = spec_tq(6);
        let err = Series::monomial(&spec, 1, &[(Var::Q, -1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidExponent { .. }));
    }

    #[test]
    fn negative_non_q_is_laurent() {
        let spec = spec_tq(6);
        let m = Series::monomial(&spec, 3, &[(Var::T, -2), (Var::Q, 1)]).unwrap();
        assert_eq!(m.coeff(&[(Var::T, -2), (Var::Q, 1)]), Coeff::from(3));
    }

    #[test]
    fn truncation_drops_high_q() {
        let spec = spec_tq(3);
        let m = Series::monomial(&spec, 1, &[(Var::Q, 4)]).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn caps_drop_wide_exponents() {
        let spec = TruncationSpec::new(5, &[Var::Y]).with_cap(Var::Y, 2);
        let kept = Series::monomial(&spec, 1, &[(Var::Y, 2)]).unwrap();
        let dropped = Series::monomial(&spec, 1, &[(Var::Y, 3)]).unwrap();
        assert!(!kept.is_zero());
        assert!(dropped.is_zero());
    }

    #[test]
    fn spec_mismatch_is_detected() {
        let a = Series::one(&spec_tq(4));
        let b = Series::one(&spec_tq(5));
        assert!(matches!(a.add(&b), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn geometric_inverse_of_one_minus_q() {
        let spec = spec_tq(5);
        let one = Series::one(&spec);
        let q = Series::monomial(&spec, 1, &[(Var::Q, 1)]).unwrap();
        let inv = one.sub(&q).unwrap().invert().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff(&[(Var::Q, k)]), Coeff::from(1));
        }
        // Round trip back to 1.
        let back = inv.mul(&one.sub(&q).unwrap()).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn one_minus_t_is_not_invertible() {
        let spec = spec_tq(5);
        let one = Series::one(&spec);
        let t = Series::monomial(&spec, 1, &[(Var::T, 1)]).unwrap();
        assert!(matches!(
            one.sub(&t).unwrap().invert(),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn pochhammer_matches_hand_expansion() {
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let spec = spec_tq(6);
        let q = Series::monomial(&spec, 1, &[(Var::Q, 1)]).unwrap();
        let p = pochhammer(&q, 2).unwrap();
        assert_eq!(p.coeff(&[]), Coeff::from(1));
        assert_eq!(p.coeff(&[(Var::Q, 1)]), Coeff::from(-1));
        assert_eq!(p.coeff(&[(Var::Q, 2)]), Coeff::from(-1));
        assert_eq!(p.coeff(&[(Var::Q, 3)]), Coeff::from(1));
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn derivative_drops_constants_and_scales() {
        let spec = TruncationSpec::new(5, &[Var::S]);
        // d/ds (3 + s^2 q) = 2 s q
        let f = Series::from_terms(
            &spec,
            [
                (ExpVec::of(&[]), Coeff::from(3)),
                (ExpVec::of(&[(Var::S, 2), (Var::Q, 1)]), Coeff::from(1)),
            ],
        )
        .unwrap();
        let d = f.derivative(Var::S).unwrap();
        assert_eq!(d.coeff(&[(Var::S, 1), (Var::Q, 1)]), Coeff::from(2));
        assert_eq!(d.num_terms(), 1);
    }

    #[test]
    fn retrunc_widens_vars_and_deepens_cutoff() {
        let spec = spec_tq(6);
        let f = Series::monomial(&spec, 2, &[(Var::T, 1), (Var::Q, 4)]).unwrap();
        let wide = f
            .retrunc(&TruncationSpec::new(6, &[Var::T, Var::X]))
            .unwrap();
        assert_eq!(wide.coeff(&[(Var::T, 1), (Var::Q, 4)]), Coeff::from(2));
        let shallow = f.retrunc(&spec_tq(3)).unwrap();
        assert!(shallow.is_zero());
        // Narrowing below a used variable is an error.
        assert!(f.retrunc(&TruncationSpec::new(6, &[])).is_err());
    }
}
