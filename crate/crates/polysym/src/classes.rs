//! Generating series for the base families of convex lattice shapes.
//!
//! The families form a tower: partition (Ferrers) diagrams, padded partitions
//! (trailing empty rows allowed), partitions into distinct parts, stacks
//! (unimodal row piles), shifted stacks (each row starts one cell right of its
//! predecessor), directed convex polyominoes (convex shapes containing their
//! bottom-left corner), and finally arbitrary convex polyominoes.  Each
//! constructor returns a truncated multivariate series under the caller's
//! [`TruncationSpec`].
//!
//! Variable conventions, used consistently across the crate:
//!
//! * `x` — width of the shape (equivalently its largest row),
//! * `y` — height (number of rows, counting permitted empty rows),
//! * `q` — area (number of cells),
//! * `u` — width of the top row (shifted-stack refinements),
//! * `s` — height of the leftmost column (directed-convex refinement).
//!
//! Every infinite sum in this module is truncated using an explicit bound
//! derived from the minimum `q`-degree of its terms, never a guessed cutoff:
//! a summand whose guaranteed `q`-power already exceeds `qmax` contributes
//! nothing and ends the loop (the bounds are monotone in the summation
//! index).  Division always goes through [`Series::invert`], which requires a
//! unit constant term, or through an explicit geometric sum when a variable
//! cap makes `1/(1-v)` finite.

use crate::error::{Error, Result};
use crate::qfun::qbinomial;
use crate::qseries::Var::{Q, S, U, X, Y};
use crate::qseries::{pochhammer, Coeff, ExpVec, Image, Series, TruncationSpec, Var};

/// Identifier for the shape families with a dedicated series constructor.
///
/// The first block names the base families of this module; `Y1` through
/// `Aall` name the staircase-source and doubly-shifted families built in the
/// symmetry module, whose enumeration the oracle also cross-checks.  Numbered
/// ids (`E1`, `A2`, ...) are the inclusion–exclusion sub-families of their
/// unnumbered parents (`Eall`, `Aall`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassId {
    /// Partition diagrams (weakly decreasing positive rows).
    P,
    /// Partitions padded with trailing empty rows.
    P0,
    /// Partitions into distinct parts.
    Ps,
    /// Stacks: unimodal piles of positive rows.
    T,
    /// Stacks allowing empty rows at both ends.
    T0,
    /// Shifted stacks: every row starts one cell right of the row below.
    Ts,
    /// Bases of shifted stacks: distinct parts, the largest exceeding the
    /// second by at least two.
    P1,
    /// Directed convex polyominoes (contain their bottom-left corner).
    D,
    /// All convex polyominoes.
    C,
    /// Staircase-source convex shapes whose source reaches the bottom row.
    Y1,
    /// Staircase-source convex shapes whose source stops above the bottom.
    Y2,
    /// All staircase-source convex shapes (`Y1` plus `Y2`).
    Ds,
    /// Even doubly shifted stacks, south-east corner below the security line.
    E1,
    /// Even doubly shifted stacks, north-east corner above the security line.
    E2,
    /// Even doubly shifted stacks satisfying both corner conditions.
    E3,
    /// All even doubly shifted stacks.
    Eall,
    /// Acute doubly shifted stacks, south-east corner below the security line.
    A1,
    /// Acute doubly shifted stacks, north-east corner above the flotation line.
    A2,
    /// Acute doubly shifted stacks satisfying both corner conditions.
    A3,
    /// All acute doubly shifted stacks.
    Aall,
}

impl ClassId {
    /// Every class id, in presentation order.
    pub const ALL: [ClassId; 20] = [
        ClassId::P,
        ClassId::P0,
        ClassId::Ps,
        ClassId::T,
        ClassId::T0,
        ClassId::Ts,
        ClassId::P1,
        ClassId::D,
        ClassId::C,
        ClassId::Y1,
        ClassId::Y2,
        ClassId::Ds,
        ClassId::E1,
        ClassId::E2,
        ClassId::E3,
        ClassId::Eall,
        ClassId::A1,
        ClassId::A2,
        ClassId::A3,
        ClassId::Aall,
    ];

    /// The canonical lowercase name used by the command-line interface.
    pub fn name(self) -> &'static str {
        match self {
            ClassId::P => "p",
            ClassId::P0 => "p0",
            ClassId::Ps => "ps",
            ClassId::T => "t",
            ClassId::T0 => "t0",
            ClassId::Ts => "ts",
            ClassId::P1 => "p1",
            ClassId::D => "d",
            ClassId::C => "c",
            ClassId::Y1 => "y1",
            ClassId::Y2 => "y2",
            ClassId::Ds => "ds",
            ClassId::E1 => "e1",
            ClassId::E2 => "e2",
            ClassId::E3 => "e3",
            ClassId::Eall => "e",
            ClassId::A1 => "a1",
            ClassId::A2 => "a2",
            ClassId::A3 => "a3",
            ClassId::Aall => "a",
        }
    }
}

impl std::fmt::Display for ClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassId> {
        let lower = s.to_ascii_lowercase();
        ClassId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == lower)
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

/// Shorthand for a single-term series.
pub(crate) fn mono(spec: &TruncationSpec, c: i64, exps: &[(Var, i32)]) -> Result<Series> {
    // Several summands below carry quadratically growing powers of q
    // (q^{n^2}, q^{n(n-1)/2}, ...).  Once such a power exceeds the truncation
    // bound the whole summand is dead, so return zero without constructing
    // the monomial; loop bodies use `is_zero` on these prefactors to stop.
    for (v, e) in exps {
        if *v == Q && *e > spec.qmax() as i32 {
            return Ok(Series::zero(spec));
        }
    }
    Series::monomial(spec, c, exps)
}

/// `(-1)^n` as a coefficient.
fn sgn(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The geometric series `1/(1-v) = 1 + v + v^2 + ...`, made finite by the
/// spec's cap on `v`.
///
/// # Errors
///
/// [`Error::RefusedScale`] if the spec has no cap on `v`: without one the sum
/// has unboundedly many admissible terms (a `v`-power carries no `q`-weight).
pub fn geometric_inverse(spec: &TruncationSpec, v: Var) -> Result<Series> {
    let cap = spec.cap(v).ok_or_else(|| {
        Error::RefusedScale(format!(
            "1/(1-{name}) has unbounded {name}-degree; set a {name}-cap on the truncation spec",
            name = v.name()
        ))
    })?;
    Series::from_terms(
        spec,
        (0..=cap as i32).map(|k| (ExpVec::of(&[(v, k)]), Coeff::from(1))),
    )
}

// ---------------------------------------------------------------------------
// Partition families
// ---------------------------------------------------------------------------

/// Partition diagrams: `sum_{m>=1} x^m y q^m / (yq)_m`.
///
/// The coefficient of `x^m y^k q^a` counts partitions of `a` into `k` parts
/// with largest part `m`: the prefactor lays down the largest part, and
/// `1/(yq)_m = 1/((1-yq)...(1-yq^m))` supplies the remaining parts, each of
/// size at most `m` and each marked by `y`.
pub fn series_p(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let mmax = spec.cap(X).map_or(qmax, |c| c.min(qmax));
    let mut acc = Series::zero(spec);
    let mut inv_poch = one.clone(); // 1/(yq)_m, extended one factor per pass
    for m in 1..=mmax {
        let factor = &one - &mono(spec, 1, &[(Y, 1), (Q, m as i32)])?;
        inv_poch = (&inv_poch * &factor.invert()?).clone();
        let pref = mono(spec, 1, &[(X, m as i32), (Y, 1), (Q, m as i32)])?;
        if pref.is_zero() {
            continue;
        }
        acc = &acc + &(&pref * &inv_poch);
    }
    Ok(acc)
}

/// Partitions padded with trailing empty rows:
/// `sum_{m>=0} x^m y q^m / (y)_{m+1}`.
///
/// Compared with [`series_p`] the denominator gains the factor `1/(1-y)`,
/// which appends rows of width zero after the genuine parts (so the `m = 0`
/// term enumerates the all-empty piles).  `y` still counts every row.
///
/// # Errors
///
/// [`Error::RefusedScale`] without a `y`-cap — the `1/(1-y)` factor otherwise
/// has unbounded `y`-degree at fixed area.
pub fn series_p0(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let geo_y = geometric_inverse(spec, Y)?;
    let mmax = spec.cap(X).map_or(qmax, |c| c.min(qmax));
    let mut acc = Series::zero(spec);
    let mut inv_poch = one.clone(); // 1/(yq)_m
    for m in 0..=mmax {
        if m >= 1 {
            let factor = &one - &mono(spec, 1, &[(Y, 1), (Q, m as i32)])?;
            inv_poch = (&inv_poch * &factor.invert()?).clone();
        }
        let pref = mono(spec, 1, &[(X, m as i32), (Y, 1), (Q, m as i32)])?;
        if pref.is_zero() {
            continue;
        }
        acc = &acc + &(&(&pref * &inv_poch) * &geo_y);
    }
    Ok(acc)
}

fn ps_core(spec: &TruncationSpec, mark_top: bool) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let mmax = spec.cap(X).map_or(qmax, |c| c.min(qmax));
    let mut acc = Series::zero(spec);
    let mut poch = one.clone(); // (-yq)_{m-1}
    for m in 1..=mmax {
        if m >= 2 {
            poch = &poch * &(&one + &mono(spec, 1, &[(Y, 1), (Q, m as i32 - 1)])?);
        }
        let mut exps = vec![(X, m as i32), (Y, 1), (Q, m as i32)];
        if mark_top {
            exps.push((U, m as i32));
        }
        let pref = mono(spec, 1, &exps)?;
        if pref.is_zero() {
            continue;
        }
        acc = &acc + &(&pref * &poch);
    }
    Ok(acc)
}

/// Partitions into distinct parts: `sum_{m>=1} x^m y q^m (-yq)_{m-1}`.
///
/// The prefactor is the largest part `m`; the finite product
/// `(-yq)_{m-1} = (1+yq)(1+yq^2)...(1+yq^{m-1})` chooses the smaller parts,
/// each size below `m` used at most once.
pub fn series_ps(spec: &TruncationSpec) -> Result<Series> {
    ps_core(spec, false)
}

/// [`series_ps`] with the largest part additionally marked by `u`, i.e. the
/// substitution `x -> xu` applied to the sum.  Used where a distinct-part
/// partition sits on top of another shape and its largest row must be matched
/// against the supporting width.
pub fn series_ps_u(spec: &TruncationSpec) -> Result<Series> {
    ps_core(spec, true)
}

// ---------------------------------------------------------------------------
// Stack families
// ---------------------------------------------------------------------------

/// Stacks with empty rows permitted at both ends:
/// `sum_{m>=0} x^m y q^m / ((y)_{m+1} (y)_m)`.
///
/// A stack is a unimodal pile of rows; the two denominators build the
/// (weakly increasing) run below the widest row and the (weakly decreasing)
/// run above it, empty rows allowed at the far ends.  Uses the factorization
/// `(y)_{m+1}(y)_m = (1-y)^2 (yq)_m (yq)_{m-1}` for `m >= 1`.
///
/// # Errors
///
/// [`Error::RefusedScale`] without a `y`-cap.
pub fn series_t0(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let geo_y = geometric_inverse(spec, Y)?;
    let geo_y2 = &geo_y * &geo_y;
    let mmax = spec.cap(X).map_or(qmax, |c| c.min(qmax));
    // m = 0: the all-empty piles, y/(1-y).
    let mut acc = &mono(spec, 1, &[(Y, 1)])? * &geo_y;
    let mut inv_cur = one.clone(); // 1/(yq)_m
    let mut inv_prev;
    for m in 1..=mmax {
        inv_prev = inv_cur.clone();
        let factor = &one - &mono(spec, 1, &[(Y, 1), (Q, m as i32)])?;
        inv_cur = (&inv_cur * &factor.invert()?).clone();
        let pref = mono(spec, 1, &[(X, m as i32), (Y, 1), (Q, m as i32)])?;
        if pref.is_zero() {
            continue;
        }
        acc = &acc + &(&(&pref * &geo_y2) * &(&inv_cur * &inv_prev));
    }
    Ok(acc)
}

/// Stacks proper (every row nonempty), via `T(x,y,q) = x T0(x, yq, q)`.
///
/// Substituting `y -> yq` in [`series_t0`] gives every row one mandatory
/// cell, and the extra factor `x` restores the width lost by that
/// normalization.  The internal `T0` computation caps `y` at `qmax`, which is
/// harmless: after `y -> yq` any term of higher `y`-degree would exceed the
/// area cutoff.
pub fn series_t(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let ycap = spec.cap(Y).map_or(qmax, |c| c.min(qmax));
    let inner_spec = spec.clone().with_cap(Y, ycap);
    let inner = series_t0(&inner_spec)?;
    let shifted = inner.substitute(&[Image::map(Y, &[(Y, 1), (Q, 1)])], spec, false)?;
    shifted.mul_monomial(1, &ExpVec::of(&[(X, 1)]))
}

/// The stack-counting polynomial `V_n`, by its three-term recurrence
/// `V_n = 2 V_{n-1} + (x q^{n-1} - 1) V_{n-2}`, `V_0 = V_1 = 1`.
///
/// `V_n / (xq)_n` is the width/area series of height-`n` stacks; see
/// [`series_t0n`].
pub fn poly_vn(n: u32, spec: &TruncationSpec) -> Result<Series> {
    let one = Series::one(spec);
    let mut prev = one.clone();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = one.clone();
    for i in 2..=n {
        let xq = mono(spec, 1, &[(X, 1), (Q, i as i32 - 1)])?;
        let next = &cur.scale(2) + &(&(&xq - &one) * &prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The polynomial `V_n` by its closed form
/// `1 + sum_{1<=k<=n/2} x^k q^{k^2} sum_{m=k}^{n-k} [m,k]_q [n-m-1,k-1]_q`,
/// where `[n,k]_q` is the Gaussian binomial.  Cross-checks [`poly_vn`].
pub fn poly_vn_closed(n: u32, spec: &TruncationSpec) -> Result<Series> {
    let mut acc = Series::one(spec);
    for k in 1..=(n / 2) {
        let pref = mono(spec, 1, &[(X, k as i32), (Q, (k * k) as i32)])?;
        if pref.is_zero() {
            continue;
        }
        let mut inner = Series::zero(spec);
        for m in k..=(n - k) {
            inner = &inner + &(&qbinomial(spec, m, k)? * &qbinomial(spec, n - m - 1, k - 1)?);
        }
        acc = &acc + &(&pref * &inner);
    }
    Ok(acc)
}

/// Width/area series of stacks with exactly `n` rows, empty rows allowed at
/// the ends, via the quotient `V_n / (xq)_n`.
///
/// Includes the constant term `1` for the all-empty stack (the `n`-row pile
/// with no cells); `x` marks the width, i.e. the longest row.
pub fn series_t0n(n: u32, spec: &TruncationSpec) -> Result<Series> {
    let vn = poly_vn(n, spec)?;
    let xq = mono(spec, 1, &[(X, 1), (Q, 1)])?;
    let poch = pochhammer(&xq, n)?;
    Ok(&vn * &poch.invert()?)
}

/// The same series as [`series_t0n`], by the direct double sum
/// `1 + sum_{m>=1} sum_{j=1}^{n} x^m q^m [m+j-1,m]_q [m+n-j-1,m-1]_q`.
///
/// The summand places the widest row (width `m`) at position `j`; the two
/// Gaussian binomials build the weakly increasing run below it and the
/// strictly smaller weakly decreasing run above.  The constant `1` (all rows
/// empty) is added explicitly since the sum starts at width `m = 1`.
pub fn series_t0n_sum(n: u32, spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let mmax = spec.cap(X).map_or(qmax, |c| c.min(qmax));
    let mut acc = Series::one(spec);
    for m in 1..=mmax {
        let pref = mono(spec, 1, &[(X, m as i32), (Q, m as i32)])?;
        if pref.is_zero() {
            continue;
        }
        let mut inner = Series::zero(spec);
        for j in 1..=n {
            inner = &inner + &(&qbinomial(spec, m + j - 1, m)? * &qbinomial(spec, m + n - j - 1, m - 1)?);
        }
        acc = &acc + &(&pref * &inner);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Shifted stacks
// ---------------------------------------------------------------------------

/// Bases of shifted stacks: `uxyq + y sum_{k>=2} (uxq)^k (-yq)_{k-2}`.
///
/// These are distinct-part partitions whose largest part exceeds the second
/// by at least two (a lone part of any size qualifies); the largest part is
/// marked by both `u` and `x` and the product supplies parts up to `k - 2`.
pub fn series_p1(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let mut acc = mono(spec, 1, &[(U, 1), (X, 1), (Y, 1), (Q, 1)])?;
    let mut poch = one.clone(); // (-yq)_{k-2}
    for k in 2..=qmax {
        if k >= 3 {
            poch = &poch * &(&one + &mono(spec, 1, &[(Y, 1), (Q, k as i32 - 2)])?);
        }
        let pref = mono(spec, 1, &[(U, k as i32), (X, k as i32), (Y, 1), (Q, k as i32)])?;
        if pref.is_zero() {
            continue;
        }
        acc = &acc + &(&pref * &poch);
    }
    Ok(acc)
}

/// Shifted stacks by fixed-point iteration of
/// `T_S(u) = P_1(u) + (xyu^2 q^2/(1-uq)) (T_S(1) - T_S(uq))`.
///
/// A shifted stack is either a base alone or a base with a shorter shifted
/// stack stacked one cell to the right; the kernel glues the recursion
/// together.  Each pass raises the minimum `q`-degree of the correction, so
/// under truncation the iteration reaches a fixed point.  `u` marks the top
/// row width.
pub fn series_ts_iter(spec: &TruncationSpec) -> Result<Series> {
    let one = Series::one(spec);
    let p1 = series_p1(spec)?;
    let geo_uq = (&one - &mono(spec, 1, &[(U, 1), (Q, 1)])?).invert()?;
    let kernel = &mono(spec, 1, &[(X, 1), (Y, 1), (U, 2), (Q, 2)])? * &geo_uq;
    let shift_u = [Image::map(U, &[(U, 1), (Q, 1)])];
    let mut cur = p1.clone();
    for _ in 0..=spec.qmax() + 2 {
        let at_one = cur.eval_at_one(U)?.retrunc(spec)?;
        let shifted = cur.substitute(&shift_u, spec, false)?;
        let next = &p1 + &(&kernel * &(&at_one - &shifted));
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    unreachable!("shifted-stack iteration must stabilize within qmax passes");
}

/// Shifted stacks in closed form,
/// `T_S(u) = (E(u) + E(1) F(u) - E(u) F(1)) / (1 - F(1))` with
/// `E(u) = sum_n (-1)^n x^n y^n u^{2n} q^{n^2+n} P_1(u q^n) / (uq)_n` and
/// `F(u) = sum_n (-1)^n x^{n+1} y^{n+1} u^{2n+2} q^{n^2+3n+2} / (uq)_{n+1}`.
///
/// Solves the same functional equation as [`series_ts_iter`] by two rounds
/// of kernel iteration; the quadratic `q`-powers truncate both sums after
/// `O(sqrt(qmax))` terms.
pub fn series_ts_closed(spec: &TruncationSpec) -> Result<Series> {
    let qmax = spec.qmax();
    let p1 = series_p1(spec)?;
    let uq = mono(spec, 1, &[(U, 1), (Q, 1)])?;

    let mut e_u = Series::zero(spec);
    let mut n = 0u32;
    while n * n + n <= qmax {
        let pref = mono(
            spec,
            sgn(n),
            &[
                (X, n as i32),
                (Y, n as i32),
                (U, 2 * n as i32),
                (Q, (n * n + n) as i32),
            ],
        )?;
        if pref.is_zero() {
            break;
        }
        let p1_shift = if n == 0 {
            p1.clone()
        } else {
            p1.substitute(&[Image::map(U, &[(U, 1), (Q, n as i32)])], spec, false)?
        };
        let inv_poch = pochhammer(&uq, n)?.invert()?;
        e_u = &e_u + &(&(&pref * &p1_shift) * &inv_poch);
        n += 1;
    }

    let mut f_u = Series::zero(spec);
    let mut n = 0u32;
    while n * n + 3 * n + 2 <= qmax {
        let pref = mono(
            spec,
            sgn(n),
            &[
                (X, n as i32 + 1),
                (Y, n as i32 + 1),
                (U, 2 * n as i32 + 2),
                (Q, (n * n + 3 * n + 2) as i32),
            ],
        )?;
        if pref.is_zero() {
            break;
        }
        let inv_poch = pochhammer(&uq, n + 1)?.invert()?;
        f_u = &f_u + &(&pref * &inv_poch);
        n += 1;
    }

    let e_1 = e_u.eval_at_one(U)?.retrunc(spec)?;
    let f_1 = f_u.eval_at_one(U)?.retrunc(spec)?;
    let numer = &(&e_u + &(&e_1 * &f_u)) - &(&e_u * &f_1);
    let denom = &Series::one(spec) - &f_1;
    Ok(&numer * &denom.invert()?)
}

// ---------------------------------------------------------------------------
// Directed convex and convex polyominoes
// ---------------------------------------------------------------------------

/// Prefix ladders of the two Pochhammer products that dominate the directed
/// and convex kernels: `(sq)_n` and `(syq)_n` with their inverses, for
/// `0 <= n <= nmax`.  Shifted products reduce to cached entries via
/// `(a q^j)_k = (a)_{j+k-1} / (a)_{j-1}`-style factorizations, so no other
/// Pochhammer values are ever needed.
struct SLadders {
    poch_sy: Vec<Series>,
    inv_s: Vec<Series>,
    inv_sy: Vec<Series>,
}

fn s_ladders(spec: &TruncationSpec, nmax: u32) -> Result<SLadders> {
    let one = Series::one(spec);
    let mut poch_sy = vec![one.clone()];
    let mut inv_s = vec![one.clone()];
    let mut inv_sy = vec![one.clone()];
    for n in 1..=nmax {
        let fs = &one - &mono(spec, 1, &[(S, 1), (Q, n as i32)])?;
        let fsy = &one - &mono(spec, 1, &[(S, 1), (Y, 1), (Q, n as i32)])?;
        inv_s.push(&inv_s[n as usize - 1] * &fs.invert()?);
        poch_sy.push(&poch_sy[n as usize - 1] * &fsy);
        inv_sy.push(&inv_sy[n as usize - 1] * &fsy.invert()?);
    }
    Ok(SLadders {
        poch_sy,
        inv_s,
        inv_sy,
    })
}

/// `J_0(s) = sum_{n>=0} (-1)^n x^n s^n q^{n(n+1)/2} / ((sq)_n (syq)_n)`.
fn j0_series(spec: &TruncationSpec, lad: &SLadders) -> Result<Series> {
    let qmax = spec.qmax();
    let mut acc = Series::zero(spec);
    let mut n = 0u32;
    while n * (n + 1) / 2 <= qmax {
        let pref = mono(
            spec,
            sgn(n),
            &[(X, n as i32), (S, n as i32), (Q, (n * (n + 1) / 2) as i32)],
        )?;
        if pref.is_zero() {
            break;
        }
        let idx = n as usize;
        acc = &acc + &(&pref * &(&lad.inv_s[idx] * &lad.inv_sy[idx]));
        n += 1;
    }
    Ok(acc)
}

/// `M_1(s) = sum_{n>=1} (x^n q^n/(syq)_n) [ s/(syq)_{n-1}
///   + sum_{m=1}^{n-1} (-1)^m s^m q^{m(m-1)/2} / ((sq)_m (syq^{m+1})_{n-m-1}) ]`.
///
/// The shifted product in the inner sum is rewritten as
/// `1/(syq^{m+1})_{n-m-1} = (syq)_m / (syq)_{n-1}`, so the bracket becomes
/// `1/(syq)_{n-1} (s + w_{n-1})` with the running prefix
/// `w_k = sum_{m=1}^{k} (-1)^m s^m q^{m(m-1)/2} (syq)_m / (sq)_m`,
/// maintained across `n`.
///
/// The denominator `(sq)_m` is forced: writing the bracket with any other
/// index (for example `(sq)_{n-1}`) breaks the height-1 slice of the
/// directed-convex series, which must reduce to the horizontal bars
/// `s x q/(1-xq)` — an identity the unit tests pin down, and which a
/// brute-force enumeration cross-checks shape by shape.
fn m1_series(spec: &TruncationSpec, lad: &SLadders) -> Result<Series> {
    let qmax = spec.qmax();
    let mut acc = Series::zero(spec);
    // w_k as in the doc comment above, grown once per pass.
    let mut w = Series::zero(spec);
    for n in 1..=qmax {
        let pref = mono(spec, 1, &[(X, n as i32), (Q, n as i32)])?;
        if pref.is_zero() {
            break;
        }
        let idx = n as usize;
        let s_plus_w = &mono(spec, 1, &[(S, 1)])? + &w;
        let bracket = &lad.inv_sy[idx - 1] * &s_plus_w;
        acc = &acc + &(&(&pref * &lad.inv_sy[idx]) * &bracket);
        // Extend w with m = n for the next pass.
        let wm = mono(spec, sgn(n), &[(S, n as i32), (Q, (n * (n - 1) / 2) as i32)])?;
        if !wm.is_zero() {
            w = &w + &(&(&wm * &lad.poch_sy[idx]) * &lad.inv_s[idx]);
        }
    }
    Ok(acc)
}

/// Directed convex polyominoes:
/// `D(s,x,y,q) = y (M_1(s) J_0(1) - M_1(1) J_0(s) + M_1(1)) / J_0(1)`.
///
/// `s` marks the height of the leftmost column.  The quotient is taken by
/// inverting `J_0(1)` (unit constant term) and the inverse is verified by
/// multiplying back.
///
/// # Errors
///
/// [`Error::Malformed`] if the spec does not carry the marker variable `s`.
pub fn series_d(spec: &TruncationSpec) -> Result<Series> {
    if !spec.contains_var(S) {
        return Err(Error::Malformed(
            "directed-convex series needs the left-column marker s in its spec".into(),
        ));
    }
    let lad = s_ladders(spec, spec.qmax())?;
    let j0_s = j0_series(spec, &lad)?;
    let m1_s = m1_series(spec, &lad)?;
    let j0_1 = j0_s.eval_at_one(S)?.retrunc(spec)?;
    let m1_1 = m1_s.eval_at_one(S)?.retrunc(spec)?;
    let inv_j0_1 = j0_1.invert()?;
    assert!(
        (&inv_j0_1 * &j0_1) == Series::one(spec),
        "inverse of J0(1) failed the multiply-back check"
    );
    let numer = &(&(&m1_s * &j0_1) - &(&m1_1 * &j0_s)) + &m1_1;
    (&numer * &inv_j0_1).mul_monomial(1, &ExpVec::of(&[(Y, 1)]))
}

/// `alpha(s) = sum_{m>=1} (-1)^m x^m s^m q^{m(m+1)/2} / (sq)_m
///   * sum_{n=1}^{m} (-1)^n s^n q^{n(n+1)/2} / ((sq)_{n-1} (syq^n)_{m-n+1})`.
///
/// With `1/(syq^n)_{m-n+1} = (syq)_{n-1}/(syq)_m` the factor `1/(syq)_m`
/// leaves the inner sum, whose remaining summand depends on `n` alone; the
/// inner sum is then a running prefix `G_m = sum_{n<=m} g_n`.
fn alpha_series(spec: &TruncationSpec, lad: &SLadders) -> Result<Series> {
    let qmax = spec.qmax();
    let mut acc = Series::zero(spec);
    let mut g_prefix = Series::zero(spec);
    let mut m = 1u32;
    while m * (m + 1) / 2 <= qmax {
        let idx = m as usize;
        // g_m joins the prefix first: the inner sum includes n = m.
        let gm = mono(spec, sgn(m), &[(S, m as i32), (Q, (m * (m + 1) / 2) as i32)])?;
        if !gm.is_zero() {
            g_prefix = &g_prefix + &(&gm * &(&lad.inv_s[idx - 1] * &lad.poch_sy[idx - 1]));
        }
        let pref = mono(
            spec,
            sgn(m),
            &[(X, m as i32), (S, m as i32), (Q, (m * (m + 1) / 2) as i32)],
        )?;
        if pref.is_zero() {
            break;
        }
        acc = &acc + &(&(&pref * &(&lad.inv_s[idx] * &lad.inv_sy[idx])) * &g_prefix);
        m += 1;
    }
    Ok(acc)
}

/// `a(s) = sum_{m>=1} (x^m q^m / (1-syq^m)) [ -s^{2m-1} q^{m(m-1)} / ((sq)_{m-1})^2
///   + y sum_{n=1}^{m-1} s^{2n} q^{n^2} (syq^n - 2) / (((sq)_{n-1})^2 ((syq^n)_{m-n})^2)
///   + 2y sum_{1<=n<=k<m} (-1)^{n+k} s^{n+k} q^{n(n+1)/2 + k(k-1)/2}
///       / ((sq)_{n-1} (syq^n)_{m-n} (sq)_k (syq^{k+1})_{m-k-1}) ]`.
///
/// Both shifted products factor over the ladders with the common piece
/// `1/(syq)_{m-1}`, so the two inner sums collapse to running prefixes: the
/// single sum accumulates its `n = m-1` term per pass, and the triangular
/// double sum accumulates `h_{m-1} G_{m-1}`, where `G` is the same prefix
/// as in [`alpha_series`] and `h_k = (-1)^k s^k q^{k(k-1)/2} (syq)_k/(sq)_k`.
fn a_series(spec: &TruncationSpec, lad: &SLadders) -> Result<Series> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    let two = Series::constant(spec, 2);
    let mut acc = Series::zero(spec);
    let mut b_inner = Series::zero(spec);
    let mut g_prefix = Series::zero(spec);
    let mut c_inner = Series::zero(spec);
    for m in 1..=qmax {
        if m >= 2 {
            let n = m - 1; // extend both running prefixes up to m - 1
            let nidx = n as usize;
            let bmono = mono(spec, 1, &[(S, 2 * n as i32), (Q, (n * n) as i32)])?;
            if !bmono.is_zero() {
                let base = &lad.inv_s[nidx - 1] * &lad.poch_sy[nidx - 1];
                let syqn = mono(spec, 1, &[(S, 1), (Y, 1), (Q, n as i32)])?;
                b_inner = &b_inner + &(&(&bmono * &(&base * &base)) * &(&syqn - &two));
            }
            let gk = mono(spec, sgn(n), &[(S, n as i32), (Q, (n * (n + 1) / 2) as i32)])?;
            if !gk.is_zero() {
                g_prefix = &g_prefix + &(&gk * &(&lad.inv_s[nidx - 1] * &lad.poch_sy[nidx - 1]));
            }
            let hk = mono(spec, sgn(n), &[(S, n as i32), (Q, (n * (n - 1) / 2) as i32)])?;
            if !hk.is_zero() {
                c_inner = &c_inner + &(&(&hk * &(&lad.inv_s[nidx] * &lad.poch_sy[nidx])) * &g_prefix);
            }
        }
        let pref = mono(spec, 1, &[(X, m as i32), (Q, m as i32)])?;
        if pref.is_zero() {
            break;
        }
        let idx = m as usize;
        let geo = (&one - &mono(spec, 1, &[(S, 1), (Y, 1), (Q, m as i32)])?).invert()?;
        let mut bracket = Series::zero(spec);
        let amono = mono(spec, -1, &[(S, 2 * m as i32 - 1), (Q, (m * (m - 1)) as i32)])?;
        if !amono.is_zero() {
            bracket = &bracket + &(&amono * &(&lad.inv_s[idx - 1] * &lad.inv_s[idx - 1]));
        }
        if m >= 2 {
            let isy2 = &lad.inv_sy[idx - 1] * &lad.inv_sy[idx - 1];
            let inner = &b_inner + &c_inner.scale(2);
            if !inner.is_zero() {
                bracket = &bracket + &(&mono(spec, 1, &[(Y, 1)])? * &(&isy2 * &inner));
            }
        }
        if bracket.is_zero() {
            continue;
        }
        acc = &acc + &(&(&pref * &geo) * &bracket);
    }
    Ok(acc)
}

/// `J_1 = sum_{n>=1} x^n q^n / ((q)_{n-1} (q)_n)` and
/// `K_1 = -1 + sum_{n>=1} (x^n q^n/((q)_{n-1}(q)_n))
///   [ sum_{k=1}^{n-1} 2 q^k/(1-q^k) + q^n/(1-q^n) ]`.
fn j1_k1_series(spec: &TruncationSpec) -> Result<(Series, Series)> {
    let qmax = spec.qmax();
    let one = Series::one(spec);
    // geo[k] = q^k/(1-q^k) = q^k + q^{2k} + ...
    let mut geo = vec![Series::zero(spec)];
    for k in 1..=qmax {
        geo.push(Series::from_terms(
            spec,
            (1..=qmax / k).map(|j| (ExpVec::of(&[(Q, (j * k) as i32)]), Coeff::from(1))),
        )?);
    }
    let mut j1 = Series::zero(spec);
    let mut k1 = Series::constant(spec, -1);
    let mut prefix = Series::zero(spec); // sum_{k<n} 2 q^k/(1-q^k)
    let mut inv_cur = one.clone(); // 1/(q)_n
    let mut inv_prev;
    for n in 1..=qmax {
        inv_prev = inv_cur.clone();
        let factor = &one - &mono(spec, 1, &[(Q, n as i32)])?;
        inv_cur = (&inv_cur * &factor.invert()?).clone();
        let pref = mono(spec, 1, &[(X, n as i32), (Q, n as i32)])?;
        if pref.is_zero() {
            break;
        }
        let core = &(&pref * &inv_prev) * &inv_cur;
        j1 = &j1 + &core;
        k1 = &k1 + &(&core * &(&prefix + &geo[n as usize]));
        prefix = &prefix + &geo[n as usize].scale(2);
    }
    Ok((j1, k1))
}

/// Convex polyominoes: `C(x,y,q) = J_1 E'(1) - K_1 E(1)` with
/// `E(s) = 2 y^2 (M_1(1)/J_0(1)) alpha(s) - y a(s)`.
///
/// The left-column marker `s` lives only inside this constructor: the final
/// inclusion–exclusion needs `E` evaluated at `s = 1` and its `s`-derivative
/// there, which the series substrate provides exactly.  The derivative step
/// is why the internal spec must not cap `s`.
///
/// # Errors
///
/// [`Error::Malformed`] if the caller's spec already contains `s`.
pub fn series_c(spec: &TruncationSpec) -> Result<Series> {
    if spec.contains_var(S) {
        return Err(Error::Malformed(
            "convex series computes its left-column marker internally; pass a spec without s".into(),
        ));
    }
    let sspec = spec.with_var(S);
    let lad = s_ladders(&sspec, sspec.qmax())?;
    let j0_1 = j0_series(&sspec, &lad)?.eval_at_one(S)?.retrunc(&sspec)?;
    let m1_1 = m1_series(&sspec, &lad)?.eval_at_one(S)?.retrunc(&sspec)?;
    let inv_j0_1 = j0_1.invert()?;
    assert!(
        (&inv_j0_1 * &j0_1) == Series::one(&sspec),
        "inverse of J0(1) failed the multiply-back check"
    );
    let alpha = alpha_series(&sspec, &lad)?;
    let a_s = a_series(&sspec, &lad)?;
    let e_s = &(&(&alpha * &m1_1) * &inv_j0_1).mul_monomial(2, &ExpVec::of(&[(Y, 2)]))?
        - &a_s.mul_monomial(1, &ExpVec::of(&[(Y, 1)]))?;
    let e_at_1 = e_s.eval_at_one(S)?.retrunc(spec)?;
    let e_prime_1 = e_s.derivative(S)?.eval_at_one(S)?.retrunc(spec)?;
    let (j1, k1) = j1_k1_series(spec)?;
    Ok(&(&j1 * &e_prime_1) - &(&k1 * &e_at_1))
}
