//! Orbit counting under the symmetries of the square.
//!
//! The eight isometries of the square grid that fix a cell's center — four
//! rotations and four reflections — act on convex polyominoes.  This module
//! supplies the group bookkeeping (elements, the ten subgroups, the Möbius
//! function of the subgroup lattice) and combines the fixed-point series of
//! [`crate::symmetry`] into orbit counts:
//!
//! * [`series_rotation_type`]: polyominoes up to rotation, by averaging the
//!   four rotations' fixed-point series;
//! * [`series_congruence_type`]: polyominoes up to rotation and reflection,
//!   by averaging all eight series;
//! * [`series_asymmetric`]: polyominoes with no symmetry at all, by Möbius
//!   inversion over the subgroup lattice;
//! * [`series_exactly`]: polyominoes whose symmetry group is exactly a given
//!   subgroup, the Möbius inversion relative to that subgroup.
//!
//! Averaging relies on the orbit-counting lemma: summing `|Fix(g)|` over a
//! group and dividing by its order counts orbits.  The divisions are checked
//! exactly — a remainder anywhere means an upstream series is wrong, so it
//! surfaces as an error instead of a rounded answer.

use crate::error::{Error, Result};
use crate::qseries::fmt_impl::monomial_string;
use crate::qseries::Var::{T, X, Y};
use crate::qseries::{Coeff, Image, Series, TruncationSpec};
use crate::{classes, oracle, symmetry};
use num_traits::Zero;

/// One isometry of the square grid fixing the origin cell: the identity, the
/// quarter/half/three-quarter rotations, the horizontal- and vertical-axis
/// reflections, and the two diagonal reflections.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    /// Identity.
    E,
    /// Counterclockwise quarter turn.
    R,
    /// Half turn.
    R2,
    /// Clockwise quarter turn.
    R3,
    /// Reflection in the horizontal axis.
    H,
    /// Reflection in the vertical axis.
    V,
    /// Reflection in the anti-diagonal.
    D1,
    /// Reflection in the main diagonal.
    D2,
}

impl GroupElement {
    /// All eight elements, identity first.
    pub const ALL: [GroupElement; 8] = [
        GroupElement::E,
        GroupElement::R,
        GroupElement::R2,
        GroupElement::R3,
        GroupElement::H,
        GroupElement::V,
        GroupElement::D1,
        GroupElement::D2,
    ];

    /// Short lowercase name (`"1"`, `"r"`, `"r2"`, ... `"d2"`).
    pub fn name(self) -> &'static str {
        match self {
            GroupElement::E => "1",
            GroupElement::R => "r",
            GroupElement::R2 => "r2",
            GroupElement::R3 => "r3",
            GroupElement::H => "h",
            GroupElement::V => "v",
            GroupElement::D1 => "d1",
            GroupElement::D2 => "d2",
        }
    }

    /// The image of the cell `(col, row)` under this isometry.
    pub fn apply(self, cell: (i64, i64)) -> (i64, i64) {
        let (c, r) = cell;
        match self {
            GroupElement::E => (c, r),
            GroupElement::R => (-r, c),
            GroupElement::R2 => (-c, -r),
            GroupElement::R3 => (r, -c),
            GroupElement::H => (c, -r),
            GroupElement::V => (-c, r),
            GroupElement::D1 => (-r, -c),
            GroupElement::D2 => (r, c),
        }
    }

    /// Group composition: `self.compose(other)` applies `other` first, then
    /// `self`.  Resolved through the action on a probe cell whose eight
    /// images are pairwise distinct, so the table cannot drift from `apply`.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        const PROBE: (i64, i64) = (2, 5);
        let target = self.apply(other.apply(PROBE));
        GroupElement::ALL
            .into_iter()
            .find(|g| g.apply(PROBE) == target)
            .expect("the eight probe images are pairwise distinct")
    }

    /// The inverse isometry (`r` and `r3` swap; everything else is an
    /// involution).
    pub fn inverse(self) -> GroupElement {
        GroupElement::ALL
            .into_iter()
            .find(|g| self.compose(*g) == GroupElement::E)
            .expect("every group element has an inverse")
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the ten subgroups of the square's symmetry group: the trivial
/// group, five generated by a single involution, the rotation group, the two
/// Klein four-groups, and the full group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Subgroup {
    /// The trivial subgroup.
    Trivial,
    /// Generated by the half turn.
    R2,
    /// Generated by the horizontal-axis reflection.
    H,
    /// Generated by the vertical-axis reflection.
    V,
    /// Generated by the anti-diagonal reflection.
    D1,
    /// Generated by the main-diagonal reflection.
    D2,
    /// The four rotations.
    C4,
    /// Half turn plus both axial reflections.
    HV,
    /// Half turn plus both diagonal reflections.
    D1D2,
    /// The full group of eight.
    Full,
}

impl Subgroup {
    /// All ten subgroups, ordered by size (trivial first, full group last).
    pub const ALL: [Subgroup; 10] = [
        Subgroup::Trivial,
        Subgroup::R2,
        Subgroup::H,
        Subgroup::V,
        Subgroup::D1,
        Subgroup::D2,
        Subgroup::C4,
        Subgroup::HV,
        Subgroup::D1D2,
        Subgroup::Full,
    ];

    /// Short lowercase name used by the command-line interface.
    pub fn name(self) -> &'static str {
        match self {
            Subgroup::Trivial => "1",
            Subgroup::R2 => "r2",
            Subgroup::H => "h",
            Subgroup::V => "v",
            Subgroup::D1 => "d1",
            Subgroup::D2 => "d2",
            Subgroup::C4 => "c4",
            Subgroup::HV => "hv",
            Subgroup::D1D2 => "d1d2",
            Subgroup::Full => "d4",
        }
    }

    /// The elements of the subgroup.
    pub fn elements(self) -> &'static [GroupElement] {
        use GroupElement as G;
        match self {
            Subgroup::Trivial => &[G::E],
            Subgroup::R2 => &[G::E, G::R2],
            Subgroup::H => &[G::E, G::H],
            Subgroup::V => &[G::E, G::V],
            Subgroup::D1 => &[G::E, G::D1],
            Subgroup::D2 => &[G::E, G::D2],
            Subgroup::C4 => &[G::E, G::R, G::R2, G::R3],
            Subgroup::HV => &[G::E, G::R2, G::H, G::V],
            Subgroup::D1D2 => &[G::E, G::R2, G::D1, G::D2],
            Subgroup::Full => &GroupElement::ALL,
        }
    }

    /// The number of elements.
    pub fn order(self) -> usize {
        self.elements().len()
    }

    /// Whether the element belongs to the subgroup.
    pub fn contains(self, g: GroupElement) -> bool {
        self.elements().contains(&g)
    }

    /// Whether `other` is a subgroup of `self` (as sets of elements).
    pub fn contains_subgroup(self, other: Subgroup) -> bool {
        other.elements().iter().all(|&g| self.contains(g))
    }

    /// The smallest subgroup containing every element of `self` and `g`;
    /// used by the census to turn a stabilizer's element set into its name.
    pub fn from_elements(els: &[GroupElement]) -> Subgroup {
        Subgroup::ALL
            .into_iter()
            .find(|s| {
                s.order() == els.len() && els.iter().all(|&g| s.contains(g))
            })
            .expect("every stabilizer of the action is one of the ten subgroups")
    }
}

impl std::fmt::Display for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The Möbius function of the subgroup lattice relative to a base subgroup:
/// `mu(g, g) = 1` and `mu(g, k) = -sum mu(g, h)` over the subgroups `h` with
/// `g <= h < k`.  Zero when `g` is not contained in `k`.
pub fn mobius_interval(g: Subgroup, k: Subgroup) -> i64 {
    if !k.contains_subgroup(g) {
        return 0;
    }
    if g == k {
        return 1;
    }
    let mut total = 0;
    for h in Subgroup::ALL {
        if h != k && k.contains_subgroup(h) && h.contains_subgroup(g) {
            total += mobius_interval(g, h);
        }
    }
    -total
}

/// `mu(1, h)`: the Möbius function from the trivial subgroup, the weights
/// that invert "fixed by at least" into "fixed by exactly".
pub fn mobius(h: Subgroup) -> i64 {
    mobius_interval(Subgroup::Trivial, h)
}

/// The full table of `mu(1, h)`, computed once from the lattice.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    values: [(Subgroup, i64); 10],
}

impl MobiusTable {
    /// Computes the table from the containment relation (never transcribed).
    pub fn compute() -> MobiusTable {
        let mut values = [(Subgroup::Trivial, 0); 10];
        for (slot, h) in values.iter_mut().zip(Subgroup::ALL) {
            *slot = (h, mobius(h));
        }
        MobiusTable { values }
    }

    /// The weight `mu(1, h)`.
    pub fn get(&self, h: Subgroup) -> i64 {
        self.values
            .iter()
            .find(|(s, _)| *s == h)
            .map(|(_, m)| *m)
            .expect("table holds every subgroup")
    }
}

// ---------------------------------------------------------------------------
// Fixed-point series
// ---------------------------------------------------------------------------

/// The convex-polyomino series specialized to half-perimeter and area:
/// `C(t, t, q)` with `t` marking width plus height.
pub fn series_convex_tq(spec: &TruncationSpec) -> Result<Series> {
    if !spec.contains_var(T) {
        return Err(Error::Malformed(
            "the half-perimeter specialization needs the variable t in its spec".into(),
        ));
    }
    let cap = spec.cap(T).map(|c| c.saturating_sub(1));
    let mut xyspec = TruncationSpec::new(spec.qmax(), &[X, Y]);
    if let Some(c) = cap {
        xyspec = xyspec.with_cap(X, c).with_cap(Y, c);
    }
    classes::series_c(&xyspec)?.substitute(
        &[Image::map(X, &[(T, 1)]), Image::map(Y, &[(T, 1)])],
        spec,
        false,
    )
}

/// The series of convex polyominoes fixed by one isometry, in `(t, q)`.
/// Conjugate elements share a series: both quarter turns, both axial
/// reflections, and both diagonal reflections coincide.
pub fn series_fixed(g: GroupElement, spec: &TruncationSpec) -> Result<Series> {
    match g {
        GroupElement::E => series_convex_tq(spec),
        GroupElement::R | GroupElement::R3 => symmetry::series_fr(spec),
        GroupElement::R2 => symmetry::series_sym(symmetry::SymClassId::Fr2, spec),
        GroupElement::H | GroupElement::V => symmetry::series_fv(spec),
        GroupElement::D1 | GroupElement::D2 => symmetry::series_fd(spec),
    }
}

/// The series of convex polyominoes fixed by every element of a subgroup
/// (their stabilizer *contains* the subgroup), in `(t, q)`.
///
/// Every proper subgroup has a closed construction.  The full group does
/// not: its series is the one the inversion weights always cancel, so no
/// formula for it appears anywhere in the derivations.  It is provided for
/// completeness by direct enumeration, which makes it subject to the
/// enumerator's scale bounds — treat it as experimental.
pub fn series_fixed_at_least(h: Subgroup, spec: &TruncationSpec) -> Result<Series> {
    match h {
        Subgroup::Trivial => series_convex_tq(spec),
        Subgroup::R2 => symmetry::series_sym(symmetry::SymClassId::Fr2, spec),
        Subgroup::H | Subgroup::V => symmetry::series_fv(spec),
        Subgroup::D1 | Subgroup::D2 => symmetry::series_fd(spec),
        Subgroup::C4 => symmetry::series_fr(spec),
        Subgroup::HV => symmetry::series_fhv(spec),
        Subgroup::D1D2 => symmetry::series_fd1d2(spec),
        Subgroup::Full => oracle::fully_symmetric_series(spec),
    }
}

/// Divides every coefficient by `k`, failing with the first inexact term.
fn divide_exact_scalar(s: &Series, k: i64) -> Result<Series> {
    let divisor = Coeff::from(k);
    let mut terms = Vec::with_capacity(s.num_terms());
    for (e, c) in s.iter_terms() {
        let (quot, rem) = num_integer::Integer::div_rem(c, &divisor);
        if !rem.is_zero() {
            return Err(Error::InexactDivision {
                term: monomial_string(e),
                coeff: c.to_string(),
            });
        }
        terms.push((*e, quot));
    }
    Series::from_terms(s.spec(), terms)
}

/// Convex polyominoes counted up to rotation, in `(t, q)`: the average of
/// the four rotations' fixed-point series,
/// `(C + 2 F_r + F_{r^2}) / 4`.  The division must be exact; a remainder is
/// reported as an error because it can only mean an upstream series is off.
pub fn series_rotation_type(spec: &TruncationSpec) -> Result<Series> {
    let c = series_convex_tq(spec)?;
    let fr = symmetry::series_fr(spec)?;
    let fr2 = symmetry::series_sym(symmetry::SymClassId::Fr2, spec)?;
    let total = &(&c + &fr.scale(2)) + &fr2;
    divide_exact_scalar(&total, 4)
}

/// Convex polyominoes counted up to rotation and reflection, in `(t, q)`:
/// the average over all eight isometries,
/// `(C + 2 F_r + F_{r^2} + 2 F_v + 2 F_d) / 8`.
pub fn series_congruence_type(spec: &TruncationSpec) -> Result<Series> {
    let c = series_convex_tq(spec)?;
    let fr = symmetry::series_fr(spec)?;
    let fr2 = symmetry::series_sym(symmetry::SymClassId::Fr2, spec)?;
    let fv = symmetry::series_fv(spec)?;
    let fd = symmetry::series_fd(spec)?;
    let total = &(&(&c + &fr.scale(2)) + &fr2) + &(&fv.scale(2) + &fd.scale(2));
    divide_exact_scalar(&total, 8)
}

/// Convex polyominoes with trivial stabilizer — no symmetry at all — in
/// `(t, q)`: [`series_exactly`] at the trivial subgroup.  Expanding the
/// Möbius weights gives
/// `C - F_{r^2} - 2 F_v - 2 F_d + 2 F_{hv} + 2 F_{d_1 d_2}`
/// (the rotation group and the full group carry weight zero, which is what
/// keeps the enumeration-backed series out of this formula).
pub fn series_asymmetric(spec: &TruncationSpec) -> Result<Series> {
    let res = series_exactly(Subgroup::Trivial, spec)?;
    for (e, c) in res.iter_terms() {
        assert!(
            c >= &Coeff::zero(),
            "asymmetric series went negative at {} — an upstream fixed-point series is wrong",
            monomial_string(e)
        );
    }
    Ok(res)
}

/// Convex polyominoes whose stabilizer is exactly the subgroup `g`, in
/// `(t, q)`: the Möbius inversion
/// `F_{=g} = sum_{h >= g} mu(g, h) F_{>=h}` over the interval above `g`.
///
/// Subgroups whose interval weight on the full group vanishes (`g` trivial
/// or generated by one reflection) stay entirely within closed formulas; the
/// others pick up the enumeration-backed full-group series and inherit its
/// scale bounds.
pub fn series_exactly(g: Subgroup, spec: &TruncationSpec) -> Result<Series> {
    let mut acc = Series::zero(spec);
    for h in Subgroup::ALL {
        if !h.contains_subgroup(g) {
            continue;
        }
        let mu = mobius_interval(g, h);
        if mu == 0 {
            continue;
        }
        let fixed = series_fixed_at_least(h, spec)?;
        acc = &acc + &fixed.scale(mu);
    }
    Ok(acc)
}
