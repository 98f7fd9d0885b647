//! Brute-force enumeration of convex polyominoes and of the row-built
//! families behind every series in the crate.
//!
//! Everything in this module favors the obviously-correct construction over
//! the clever one.  Convex polyominoes are generated as explicit cell sets,
//! re-validated by an independent convexity check, and classified by
//! literally applying the eight isometries.  The row-built families
//! (partitions, stacks, shifted stacks, doubly shifted stacks) are generated
//! row by row straight from their definitions.  Series are then formed by
//! summing one weight per object, so a coefficient produced here is a count
//! of concrete objects and nothing else.
//!
//! The formula layer never calls into this module to compute (the one
//! deliberate exception is the fully symmetric family, which has no closed
//! form here and is needed only for orbit refinements); instead, the test
//! suite demands that formula and enumeration agree coefficient by
//! coefficient on every window the enumerator can reach.
//!
//! All entry points refuse scales beyond roughly half a million shapes
//! ([`Error::RefusedScale`]) rather than degrade: the point of an oracle is
//! to be dependable on its declared range, not to be fast beyond it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::classes::ClassId;
use crate::error::{Error, Result};
use crate::orbits::{GroupElement, Subgroup};
use crate::pool;
use crate::qseries::Var::{Q, S, T, U, W, X, Y, Z};
use crate::qseries::{Coeff, ExpVec, Series, TruncationSpec, Var};
use crate::symmetry::SymClassId;

/// Largest area bound accepted when the half-perimeter is unconstrained.
const MAX_AREA: u32 = 14;
/// Largest half-perimeter bound accepted when the area is unconstrained.
const MAX_HALFPERIM: u32 = 12;

fn check_scale(max_area: u32, max_halfperim: u32) -> Result<()> {
    if max_area > MAX_AREA && max_halfperim > MAX_HALFPERIM {
        return Err(Error::RefusedScale(format!(
            "convex enumeration up to area {max_area} and half-perimeter {max_halfperim} \
             refused: one of the two bounds must stay within area {MAX_AREA} or \
             half-perimeter {MAX_HALFPERIM}"
        )));
    }
    Ok(())
}

fn check_series_depth(qmax: u32) -> Result<()> {
    if qmax > MAX_AREA {
        return Err(Error::RefusedScale(format!(
            "enumeration-backed series refused at truncation depth {qmax}: every \
             coefficient requires listing all objects of that area (practical bound \
             {MAX_AREA})"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Polyomino cell sets
// ---------------------------------------------------------------------------

/// A convex polyomino as an explicit, translation-normalized cell set.
///
/// Cells are `(column, row)` pairs with the minimum column and minimum row
/// both zero, kept sorted.  Construction validates the defining properties —
/// every row and every column is one contiguous run of cells, and the whole
/// set is 4-connected — so a value of this type is a convex polyomino by
/// construction, not by convention.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyomino {
    cells: Vec<(i64, i64)>,
}

/// Reports the first convexity property the cell set violates, if any.
fn convexity_violation(cells: &BTreeSet<(i64, i64)>) -> Option<&'static str> {
    let mut rows: BTreeMap<i64, (i64, i64, usize)> = BTreeMap::new();
    let mut cols: BTreeMap<i64, (i64, i64, usize)> = BTreeMap::new();
    for &(c, r) in cells {
        let row = rows.entry(r).or_insert((c, c, 0));
        row.0 = row.0.min(c);
        row.1 = row.1.max(c);
        row.2 += 1;
        let col = cols.entry(c).or_insert((r, r, 0));
        col.0 = col.0.min(r);
        col.1 = col.1.max(r);
        col.2 += 1;
    }
    if rows.values().any(|&(lo, hi, n)| hi - lo + 1 != n as i64) {
        return Some("a row is not one contiguous run of cells");
    }
    if cols.values().any(|&(lo, hi, n)| hi - lo + 1 != n as i64) {
        return Some("a column is not one contiguous run of cells");
    }
    let start = *cells.iter().next().expect("nonempty cell set");
    let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut queue: VecDeque<(i64, i64)> = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some((c, r)) = queue.pop_front() {
        for next in [(c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)] {
            if cells.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if seen.len() != cells.len() {
        return Some("the cells are not 4-connected");
    }
    None
}

impl Polyomino {
    /// Builds a polyomino from any collection of cells, translating it so the
    /// minimum column and row are zero and validating convexity.
    pub fn from_cells<I: IntoIterator<Item = (i64, i64)>>(cells: I) -> Result<Self> {
        let raw: BTreeSet<(i64, i64)> = cells.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::Malformed("a polyomino needs at least one cell".into()));
        }
        if let Some(why) = convexity_violation(&raw) {
            return Err(Error::Malformed(format!(
                "cell set is not a convex polyomino: {why}"
            )));
        }
        let minc = raw.iter().map(|&(c, _)| c).min().expect("nonempty");
        let minr = raw.iter().map(|&(_, r)| r).min().expect("nonempty");
        Ok(Polyomino {
            cells: raw.into_iter().map(|(c, r)| (c - minc, r - minr)).collect(),
        })
    }

    /// The normalized `(column, row)` cells, sorted lexicographically.
    pub fn cells(&self) -> &[(i64, i64)] {
        &self.cells
    }

    /// Number of cells.
    pub fn area(&self) -> u32 {
        self.cells.len() as u32
    }

    /// Number of occupied columns.
    pub fn width(&self) -> u32 {
        (self.cells.iter().map(|&(c, _)| c).max().expect("nonempty") + 1) as u32
    }

    /// Number of occupied rows.
    pub fn height(&self) -> u32 {
        (self.cells.iter().map(|&(_, r)| r).max().expect("nonempty") + 1) as u32
    }

    /// Half the perimeter.  For a convex polyomino the boundary makes exactly
    /// one excursion along each side of the bounding box, so this is width
    /// plus height.
    pub fn half_perimeter(&self) -> u32 {
        self.width() + self.height()
    }

    /// Whether the given cell belongs to the polyomino.
    pub fn contains(&self, cell: (i64, i64)) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// The image under one of the eight isometries, renormalized.
    pub fn transform(&self, g: GroupElement) -> Polyomino {
        Polyomino::from_cells(self.cells.iter().map(|&cell| g.apply(cell)))
            .expect("isometries preserve convexity")
    }

    /// The subgroup of isometries mapping the polyomino onto itself.
    pub fn stabilizer(&self) -> Subgroup {
        let fixed: Vec<GroupElement> = GroupElement::ALL
            .iter()
            .copied()
            .filter(|&g| self.transform(g) == *self)
            .collect();
        Subgroup::from_elements(&fixed)
    }

    /// The lexicographically least image under the given isometries; used to
    /// pick one representative per orbit.
    pub fn canonical_under(&self, elements: &[GroupElement]) -> Polyomino {
        elements
            .iter()
            .map(|&g| self.transform(g))
            .min()
            .expect("at least one isometry")
    }
}

// ---------------------------------------------------------------------------
// Exhaustive generation
// ---------------------------------------------------------------------------

/// All convex polyominoes with area at most `max_area` and half-perimeter at
/// most `max_halfperim`, in a deterministic order (by width, then generation
/// order within a width).
///
/// Shapes are generated as runs of column intervals in which consecutive
/// columns overlap, which yields exactly the column-convex connected sets;
/// row-convexity is then checked explicitly, and every survivor passes
/// through [`Polyomino::from_cells`], whose independent validation does not
/// share code with the generator.  Widths are enumerated in parallel (one
/// shard per width) and concatenated in order.
pub fn enumerate_convex(max_area: u32, max_halfperim: u32) -> Result<Vec<Polyomino>> {
    check_scale(max_area, max_halfperim)?;
    let wmax = max_area.min(max_halfperim.saturating_sub(1));
    let widths: Vec<u32> = (1..=wmax).collect();
    let shards: Vec<Vec<Polyomino>> = pool::install(|| {
        widths
            .par_iter()
            .map(|&w| convex_with_width(w, max_area, max_halfperim))
            .collect()
    });
    Ok(shards.into_iter().flatten().collect())
}

/// Streams the same shapes as [`enumerate_convex`], in the same order.
pub fn for_each_convex(
    max_area: u32,
    max_halfperim: u32,
    mut f: impl FnMut(&Polyomino),
) -> Result<()> {
    for p in enumerate_convex(max_area, max_halfperim)? {
        f(&p);
    }
    Ok(())
}

fn convex_with_width(w: u32, max_area: u32, max_halfperim: u32) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let span = (max_halfperim - w) as i64;
    let mut cols: Vec<(i64, i64)> = Vec::with_capacity(w as usize);
    place_column(
        w as usize,
        max_area as i64,
        span,
        &mut cols,
        0,
        0,
        0,
        &mut out,
    );
    out
}

/// Depth-first placement of column intervals `(bottom, top)`.  The first
/// column is anchored at bottom 0 so each shape is produced exactly once;
/// rows are renormalized at the end.
#[allow(clippy::too_many_arguments)]
fn place_column(
    w: usize,
    max_area: i64,
    span: i64,
    cols: &mut Vec<(i64, i64)>,
    area: i64,
    minb: i64,
    maxt: i64,
    out: &mut Vec<Polyomino>,
) {
    let i = cols.len();
    if i == w {
        finalize_columns(cols, minb, maxt, out);
        return;
    }
    let remaining_after = (w - i - 1) as i64;
    if i == 0 {
        let tmax = span.min(max_area - remaining_after) - 1;
        for t in 0..=tmax {
            cols.push((0, t));
            place_column(w, max_area, span, cols, t + 1, 0, t, out);
            cols.pop();
        }
        return;
    }
    let (pb, pt) = cols[i - 1];
    for b in (maxt - span + 1)..=pt {
        let minb2 = minb.min(b);
        let tmax = (minb2 + span - 1).min(b + max_area - area - remaining_after - 1);
        let tmin = b.max(pb);
        for t in tmin..=tmax {
            cols.push((b, t));
            place_column(
                w,
                max_area,
                span,
                cols,
                area + t - b + 1,
                minb2,
                maxt.max(t),
                out,
            );
            cols.pop();
        }
    }
}

fn finalize_columns(cols: &[(i64, i64)], minb: i64, maxt: i64, out: &mut Vec<Polyomino>) {
    // Column intervals with consecutive overlap are connected and
    // column-convex by construction; row-convexity must be checked.
    for r in minb..=maxt {
        let mut first = None;
        let mut last = 0usize;
        let mut count = 0usize;
        for (i, &(b, t)) in cols.iter().enumerate() {
            if b <= r && r <= t {
                if first.is_none() {
                    first = Some(i);
                }
                last = i;
                count += 1;
            }
        }
        let first = first.expect("overlapping columns leave no empty row");
        if last - first + 1 != count {
            return;
        }
    }
    let cells = cols
        .iter()
        .enumerate()
        .flat_map(|(i, &(b, t))| (b..=t).map(move |r| (i as i64, r - minb)));
    out.push(Polyomino::from_cells(cells).expect("column generator emits convex shapes"));
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

/// Which size parameter a [`census`] is grouped by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusBy {
    /// Group by number of cells.
    Area,
    /// Group by perimeter (always even for polyominoes).
    Perimeter,
}

/// One size class of the symmetry census.
///
/// The fixed-count columns say how many shapes have a stabilizer
/// *containing* the named isometry; `asymmetric` counts shapes whose
/// stabilizer is exactly trivial; the orbit columns count orbits under the
/// rotation group and the full symmetry group, obtained by averaging fixed
/// counts and asserting that the division is exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    /// Area or perimeter, per the grouping.
    pub size: u32,
    /// All shapes of this size.
    pub total: i64,
    /// Fixed by a quarter turn.
    pub quarter_turn: i64,
    /// Fixed by a half turn.
    pub half_turn: i64,
    /// Orbits under rotations alone.
    pub rotation_orbits: i64,
    /// Fixed by the horizontal-axis mirror (equal to the vertical-axis
    /// count, which is asserted).
    pub axial: i64,
    /// Fixed by one named diagonal mirror (the two diagonals agree, which is
    /// asserted).
    pub diagonal: i64,
    /// Orbits under all eight isometries.
    pub congruence_orbits: i64,
    /// Fixed by both axis mirrors.
    pub both_axial: i64,
    /// Fixed by both diagonal mirrors.
    pub both_diagonal: i64,
    /// Stabilizer exactly trivial.
    pub asymmetric: i64,
}

impl CensusRow {
    /// The ten numeric columns in output order (everything but `size`).
    pub fn columns(&self) -> [i64; 10] {
        [
            self.total,
            self.quarter_turn,
            self.half_turn,
            self.rotation_orbits,
            self.axial,
            self.diagonal,
            self.congruence_orbits,
            self.both_axial,
            self.both_diagonal,
            self.asymmetric,
        ]
    }
}

#[derive(Clone, Copy, Default)]
struct RawCounts {
    total: i64,
    quarter: i64,
    half: i64,
    mirror_h: i64,
    mirror_v: i64,
    diag_1: i64,
    diag_2: i64,
    both_axial: i64,
    both_diagonal: i64,
    asymmetric: i64,
}

fn census_shapes(by: CensusBy, max: u32) -> Result<Vec<Polyomino>> {
    match by {
        CensusBy::Area => enumerate_convex(max, max + 1),
        CensusBy::Perimeter => {
            let mh = max / 2;
            if mh < 2 {
                return Ok(Vec::new());
            }
            // A shape of half-perimeter s has area at most floor(s/2)*ceil(s/2).
            enumerate_convex((mh / 2) * (mh - mh / 2), mh)
        }
    }
}

fn census_sizes(by: CensusBy, max: u32) -> Vec<u32> {
    match by {
        CensusBy::Area => (1..=max).collect(),
        CensusBy::Perimeter => (2..=max / 2).map(|h| 2 * h).collect(),
    }
}

/// Counts convex polyominoes of each size by symmetry type, one row per area
/// `1..=max` or per even perimeter `4..=max`.
///
/// Stabilizers are computed shape by shape (in parallel), never inferred
/// from formulas, and the consistency assertions — mirror pairs agree,
/// orbit averages divide exactly — run on every call.
pub fn census(by: CensusBy, max: u32) -> Result<Vec<CensusRow>> {
    let shapes = census_shapes(by, max)?;
    let tallies: Vec<(u32, Subgroup)> = pool::install(|| {
        shapes
            .par_iter()
            .map(|p| {
                let size = match by {
                    CensusBy::Area => p.area(),
                    CensusBy::Perimeter => 2 * p.half_perimeter(),
                };
                (size, p.stabilizer())
            })
            .collect()
    });
    let mut acc: BTreeMap<u32, RawCounts> = BTreeMap::new();
    for (size, stab) in tallies {
        let c = acc.entry(size).or_default();
        c.total += 1;
        c.quarter += i64::from(stab.contains(GroupElement::R));
        c.half += i64::from(stab.contains(GroupElement::R2));
        c.mirror_h += i64::from(stab.contains(GroupElement::H));
        c.mirror_v += i64::from(stab.contains(GroupElement::V));
        c.diag_1 += i64::from(stab.contains(GroupElement::D1));
        c.diag_2 += i64::from(stab.contains(GroupElement::D2));
        c.both_axial +=
            i64::from(stab.contains(GroupElement::H) && stab.contains(GroupElement::V));
        c.both_diagonal +=
            i64::from(stab.contains(GroupElement::D1) && stab.contains(GroupElement::D2));
        c.asymmetric += i64::from(stab == Subgroup::Trivial);
    }
    let rows = census_sizes(by, max)
        .into_iter()
        .map(|size| {
            let c = acc.get(&size).copied().unwrap_or_default();
            assert_eq!(
                c.mirror_h, c.mirror_v,
                "horizontal and vertical mirror counts must agree at size {size}"
            );
            assert_eq!(
                c.diag_1, c.diag_2,
                "the two diagonal mirror counts must agree at size {size}"
            );
            let rot = c.total + 2 * c.quarter + c.half;
            assert_eq!(rot % 4, 0, "rotation orbit average not exact at size {size}");
            let cong = rot + c.mirror_h + c.mirror_v + c.diag_1 + c.diag_2;
            assert_eq!(
                cong % 8,
                0,
                "congruence orbit average not exact at size {size}"
            );
            CensusRow {
                size,
                total: c.total,
                quarter_turn: c.quarter,
                half_turn: c.half,
                rotation_orbits: rot / 4,
                axial: c.mirror_h,
                diagonal: c.diag_1,
                congruence_orbits: cong / 8,
                both_axial: c.both_axial,
                both_diagonal: c.both_diagonal,
                asymmetric: c.asymmetric,
            }
        })
        .collect();
    Ok(rows)
}

/// Renders census rows as CSV with a fixed header.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("size,id,r,r2,rotation,h_v,d1_d2,congruence,hv,d1d2,asym\n");
    for row in rows {
        out.push_str(&row.size.to_string());
        for v in row.columns() {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Orbit counts per size obtained by picking one canonical representative
/// per orbit — no averaging involved — as an independent check on the
/// averaged columns of [`census`].
///
/// Returns `(size, rotation_orbits, congruence_orbits)` triples for the same
/// sizes as [`census`].
pub fn direct_orbit_counts(by: CensusBy, max: u32) -> Result<Vec<(u32, i64, i64)>> {
    let shapes = census_shapes(by, max)?;
    let mut rot: BTreeMap<u32, i64> = BTreeMap::new();
    let mut cong: BTreeMap<u32, i64> = BTreeMap::new();
    for p in &shapes {
        let size = match by {
            CensusBy::Area => p.area(),
            CensusBy::Perimeter => 2 * p.half_perimeter(),
        };
        if p.canonical_under(Subgroup::C4.elements()) == *p {
            *rot.entry(size).or_default() += 1;
        }
        if p.canonical_under(Subgroup::Full.elements()) == *p {
            *cong.entry(size).or_default() += 1;
        }
    }
    Ok(census_sizes(by, max)
        .into_iter()
        .map(|size| {
            (
                size,
                rot.get(&size).copied().unwrap_or(0),
                cong.get(&size).copied().unwrap_or(0),
            )
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Enumeration-backed series
// ---------------------------------------------------------------------------

/// Either a base-family or a symmetry-class series request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleClass {
    /// One of the row- or cell-built base families.
    Base(ClassId),
    /// One of the symmetry classes of convex polyominoes.
    Sym(SymClassId),
}

impl From<ClassId> for OracleClass {
    fn from(id: ClassId) -> Self {
        OracleClass::Base(id)
    }
}

impl From<SymClassId> for OracleClass {
    fn from(id: SymClassId) -> Self {
        OracleClass::Sym(id)
    }
}

/// The series of any class, computed by enumeration alone.
pub fn oracle_series(class: impl Into<OracleClass>, spec: &TruncationSpec) -> Result<Series> {
    match class.into() {
        OracleClass::Base(id) => oracle_series_base(id, spec),
        OracleClass::Sym(id) => oracle_series_sym(id, spec),
    }
}

fn require_vars(spec: &TruncationSpec, vars: &[Var], what: &str) -> Result<()> {
    for &v in vars {
        if !spec.contains_var(v) {
            return Err(Error::Malformed(format!(
                "{what} marks variable {v}, which the truncation spec does not carry"
            )));
        }
    }
    Ok(())
}

fn push_term(terms: &mut Vec<(ExpVec, Coeff)>, exps: &[(Var, i32)], mult: i64) {
    terms.push((ExpVec::of(exps), Coeff::from(mult)));
}

/// The series of a base family, built by listing its objects one by one.
///
/// The row-built families are generated directly from their row
/// descriptions; the cell-built families (`d`, `c`, `y1`, `y2`, `ds`) filter
/// the full convex enumeration through per-shape predicates.  Families whose
/// height variable admits arbitrarily many empty rows (`p0`, `t0`) need a
/// cap on `y`, exactly as their formula counterparts do.
pub fn oracle_series_base(id: ClassId, spec: &TruncationSpec) -> Result<Series> {
    check_series_depth(spec.qmax())?;
    let qmax = spec.qmax() as i32;
    let mut terms: Vec<(ExpVec, Coeff)> = Vec::new();
    match id {
        ClassId::P => {
            require_vars(spec, &[X, Y], "the partition family")?;
            for_each_partition(qmax, false, &mut |first, h, a| {
                push_term(&mut terms, &[(X, first), (Y, h), (Q, a)], 1);
            });
        }
        ClassId::Ps => {
            require_vars(spec, &[X, Y], "the distinct-part partition family")?;
            for_each_partition(qmax, true, &mut |first, h, a| {
                push_term(&mut terms, &[(X, first), (Y, h), (Q, a)], 1);
            });
        }
        ClassId::P0 => {
            require_vars(spec, &[X, Y], "the partition family with empty rows")?;
            let ycap = empty_row_cap(spec, "the partition family with empty rows")? as i32;
            for k in 1..=ycap {
                push_term(&mut terms, &[(Y, k)], 1);
            }
            for_each_partition(qmax, false, &mut |first, h, a| {
                for k in h..=ycap {
                    push_term(&mut terms, &[(X, first), (Y, k), (Q, a)], 1);
                }
            });
        }
        ClassId::P1 => {
            require_vars(spec, &[U, X, Y], "the wide-top-row family")?;
            p1_terms(qmax, &mut terms);
        }
        ClassId::T => {
            require_vars(spec, &[X, Y], "the stack family")?;
            for_each_stack(qmax, &mut |peak, h, a| {
                push_term(&mut terms, &[(X, peak), (Y, h), (Q, a)], 1);
            });
        }
        ClassId::T0 => {
            require_vars(spec, &[X, Y], "the stack family with empty rows")?;
            let ycap = empty_row_cap(spec, "the stack family with empty rows")? as i32;
            for k in 1..=ycap {
                push_term(&mut terms, &[(Y, k)], 1);
            }
            for_each_stack(qmax, &mut |peak, h, a| {
                // A nonempty core of h rows sits in k rows in k-h+1 ways
                // (empty rows split between bottom and top).
                for k in h..=ycap {
                    push_term(&mut terms, &[(X, peak), (Y, k), (Q, a)], k as i64 - h as i64 + 1);
                }
            });
        }
        ClassId::Ts => {
            require_vars(spec, &[U, X, Y], "the shifted stack family")?;
            ts_terms(qmax, &mut terms);
        }
        ClassId::D => {
            require_vars(spec, &[S, X, Y], "the directed convex family")?;
            for p in enumerate_convex(spec.qmax(), spec.qmax() + 1)? {
                if !p.contains((0, 0)) {
                    continue;
                }
                let col0 = p.cells().iter().filter(|&&(c, _)| c == 0).count() as i32;
                push_term(
                    &mut terms,
                    &[
                        (S, col0),
                        (X, p.width() as i32),
                        (Y, p.height() as i32),
                        (Q, p.area() as i32),
                    ],
                    1,
                );
            }
        }
        ClassId::C => {
            require_vars(spec, &[X, Y], "the convex family")?;
            for p in enumerate_convex(spec.qmax(), spec.qmax() + 1)? {
                push_term(
                    &mut terms,
                    &[
                        (X, p.width() as i32),
                        (Y, p.height() as i32),
                        (Q, p.area() as i32),
                    ],
                    1,
                );
            }
        }
        ClassId::Y1 | ClassId::Y2 | ClassId::Ds => {
            require_vars(spec, &[X, Y, Z], "the staircase-source family")?;
            for p in enumerate_convex(spec.qmax(), spec.qmax() + 1)? {
                let Some(k) = source_chain(&p) else { continue };
                // The chain ends at the bottom-left cell, so its top cell is
                // in row k-1; the split compares the north-east corner row
                // against it.
                let above = north_east_row(&p) >= i64::from(k) - 1;
                let keep = match id {
                    ClassId::Y1 => above,
                    ClassId::Y2 => !above,
                    _ => true,
                };
                if keep {
                    push_term(
                        &mut terms,
                        &[
                            (X, p.width() as i32),
                            (Y, p.height() as i32),
                            (Z, k as i32),
                            (Q, p.area() as i32),
                        ],
                        1,
                    );
                }
            }
        }
        ClassId::E1 | ClassId::E2 | ClassId::E3 | ClassId::Eall => {
            require_vars(spec, &[X, Z, W], "the even doubly shifted stack family")?;
            dss_terms(qmax, false, dss_variant(id), &mut terms);
        }
        ClassId::A1 | ClassId::A2 | ClassId::A3 | ClassId::Aall => {
            require_vars(spec, &[X, Z, W], "the acute doubly shifted stack family")?;
            dss_terms(qmax, true, dss_variant(id), &mut terms);
        }
    }
    Series::from_terms(spec, terms)
}

fn empty_row_cap(spec: &TruncationSpec, what: &str) -> Result<u32> {
    spec.cap(Y).ok_or_else(|| {
        Error::RefusedScale(format!(
            "{what} admits unboundedly many empty rows at every area; cap y to enumerate it"
        ))
    })
}

/// Calls `f(first, height, area)` for every partition with largest part
/// `first`, total `area <= qmax`, parts weakly decreasing (strictly when
/// `distinct`) and all at least 1.
fn for_each_partition(qmax: i32, distinct: bool, f: &mut dyn FnMut(i32, i32, i32)) {
    fn rec(
        first: i32,
        prev: i32,
        height: i32,
        area: i32,
        qmax: i32,
        distinct: bool,
        f: &mut dyn FnMut(i32, i32, i32),
    ) {
        f(first, height, area);
        let hi = if distinct { prev - 1 } else { prev };
        for next in 1..=hi.min(qmax - area) {
            rec(first, next, height + 1, area + next, qmax, distinct, f);
        }
    }
    for first in 1..=qmax {
        rec(first, first, 1, first, qmax, distinct, f);
    }
}

/// Calls `f(height, area)` for every weakly decreasing sequence of parts in
/// `1..=maxpart` with total `area <= budget`, including the empty one.
fn bounded_parts(maxpart: i32, budget: i32, f: &mut dyn FnMut(i32, i32)) {
    fn rec(prev: i32, height: i32, area: i32, budget: i32, f: &mut dyn FnMut(i32, i32)) {
        f(height, area);
        for next in 1..=prev.min(budget - area) {
            rec(next, height + 1, area + next, budget, f);
        }
    }
    rec(maxpart, 0, 0, budget, f);
}

/// Calls `f(peak, height, area)` for every unimodal sequence of positive row
/// widths: split at the first maximal row, rows before it are weakly
/// increasing and strictly below the peak, rows after it weakly decreasing.
fn for_each_stack(qmax: i32, f: &mut dyn FnMut(i32, i32, i32)) {
    for peak in 1..=qmax {
        let mut before: Vec<(i32, i32)> = Vec::new();
        bounded_parts(peak - 1, qmax - peak, &mut |h, a| before.push((h, a)));
        let mut after: Vec<(i32, i32)> = Vec::new();
        bounded_parts(peak, qmax - peak, &mut |h, a| after.push((h, a)));
        for &(h1, a1) in &before {
            for &(h2, a2) in &after {
                if peak + a1 + a2 <= qmax {
                    f(peak, 1 + h1 + h2, peak + a1 + a2);
                }
            }
        }
    }
}

/// Pyramids whose top row strictly dominates the rest: a top row of width
/// `k` over any set of distinct row widths drawn from `1..=k-2` (the single
/// cell is the lone width-1 member).
fn p1_terms(qmax: i32, terms: &mut Vec<(ExpVec, Coeff)>) {
    fn subsets(
        maxpart: i32,
        budget: i32,
        extra_rows: i32,
        extra_area: i32,
        k: i32,
        terms: &mut Vec<(ExpVec, Coeff)>,
    ) {
        push_term(
            terms,
            &[(U, k), (X, k), (Y, 1 + extra_rows), (Q, k + extra_area)],
            1,
        );
        for j in 1..=maxpart.min(budget) {
            subsets(j - 1, budget - j, extra_rows + 1, extra_area + j, k, terms);
        }
    }
    if qmax >= 1 {
        push_term(terms, &[(U, 1), (X, 1), (Y, 1), (Q, 1)], 1);
    }
    for k in 2..=qmax {
        subsets(k - 2, qmax - k, 0, 0, k, terms);
    }
}

/// Shifted stacks, row by row from the bottom: each row sits one column left
/// of the one below it, rows above the bottom have width at least 2 (so
/// consecutive rows share a column), and the right edges relative to the
/// shift — `width - row_index - 1` — rise then fall with no strict valley,
/// which is exactly column-convexity.  Weight: `u` top-row width, `x` bounding
/// width (max right edge plus height), `y` rows, `q` area.
fn ts_terms(qmax: i32, terms: &mut Vec<(ExpVec, Coeff)>) {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        row: i32,
        area: i32,
        maxr: i32,
        r_prev: i32,
        descended: bool,
        qmax: i32,
        terms: &mut Vec<(ExpVec, Coeff)>,
    ) {
        for w in 2..=(qmax - area) {
            let r = w - row - 1;
            if descended && r > r_prev {
                continue;
            }
            let m = maxr.max(r);
            push_term(
                terms,
                &[(U, w), (X, m + row + 1), (Y, row + 1), (Q, area + w)],
                1,
            );
            rec(
                row + 1,
                area + w,
                m,
                r,
                descended || r < r_prev,
                qmax,
                terms,
            );
        }
    }
    for w0 in 1..=qmax {
        push_term(terms, &[(U, w0), (X, w0), (Y, 1), (Q, w0)], 1);
        rec(1, w0, w0 - 1, w0 - 1, false, qmax, terms);
    }
}

/// Which corner condition a doubly-shifted-stack family imposes.
#[derive(Clone, Copy)]
enum DssVariant {
    /// South-east corner at or below the wedge row.
    One,
    /// North-east corner above the wedge (strictly above for the even
    /// family, at wedge level or above for the acute one).
    Two,
    /// Both corner conditions.
    Three,
    /// No corner condition.
    All,
}

fn dss_variant(id: ClassId) -> DssVariant {
    match id {
        ClassId::E1 | ClassId::A1 => DssVariant::One,
        ClassId::E2 | ClassId::A2 => DssVariant::Two,
        ClassId::E3 | ClassId::A3 => DssVariant::Three,
        _ => DssVariant::All,
    }
}

#[derive(Clone, Copy)]
struct DssState {
    upper: bool,
    rows: i32,
    n_lower: i32,
    l: i64,
    w: i64,
    area: i32,
    minl: i64,
    maxr: i64,
    se: i32,
    ne: i32,
    descended: bool,
}

/// Doubly shifted stacks: rows bottom to top whose left edges descend by
/// exactly one per row up to a wedge row and ascend by one per row above it
/// (the even family repeats the wedge's left edge once — a flat pair — the
/// acute family turns immediately), with right edges free of strict valleys
/// and consecutive rows overlapping.  `z` counts rows up to and including
/// the wedge, `w` the rows above it (the acute wedge row counts on both
/// sides), `x` marks the bounding width and `q` the area.
fn dss_terms(qmax: i32, acute: bool, variant: DssVariant, terms: &mut Vec<(ExpVec, Coeff)>) {
    for w0 in 1..=qmax {
        let st = DssState {
            upper: false,
            rows: 1,
            n_lower: 1,
            l: 0,
            w: w0 as i64,
            area: w0,
            minl: 0,
            maxr: w0 as i64 - 1,
            se: 0,
            ne: 0,
            descended: false,
        };
        dss_walk(qmax, acute, variant, st, terms);
    }
}

fn dss_walk(
    qmax: i32,
    acute: bool,
    variant: DssVariant,
    st: DssState,
    terms: &mut Vec<(ExpVec, Coeff)>,
) {
    if acute || st.upper {
        let wedge = st.n_lower - 1;
        let n1 = st.n_lower;
        let n2 = st.rows - st.n_lower + i32::from(acute);
        let above = if acute { wedge } else { wedge + 1 };
        let keep = match variant {
            DssVariant::One => st.se <= wedge,
            DssVariant::Two => st.ne >= above,
            DssVariant::Three => st.se <= wedge && st.ne >= above,
            DssVariant::All => true,
        };
        if keep {
            let width = (st.maxr - st.minl + 1) as i32;
            push_term(terms, &[(X, width), (Z, n1), (W, n2), (Q, st.area)], 1);
        }
    }
    let budget = qmax - st.area;
    let r_prev = st.l + st.w - 1;
    let extend = |l2: i64, wmin: i64, upper: bool, terms: &mut Vec<(ExpVec, Coeff)>| {
        for w2 in wmin..=i64::from(budget) {
            let r2 = l2 + w2 - 1;
            if st.descended && r2 > r_prev {
                continue;
            }
            let mut next = DssState {
                upper,
                rows: st.rows + 1,
                n_lower: st.n_lower + i32::from(!upper),
                l: l2,
                w: w2,
                area: st.area + w2 as i32,
                minl: st.minl.min(l2),
                maxr: st.maxr,
                se: st.se,
                ne: st.ne,
                descended: st.descended || r2 < r_prev,
            };
            if r2 > st.maxr {
                next.maxr = r2;
                next.se = st.rows;
                next.ne = st.rows;
            } else if r2 == st.maxr {
                next.ne = st.rows;
            }
            dss_walk(qmax, acute, variant, next, terms);
        }
    };
    if !st.upper {
        // Continue the descending left profile; width 2 keeps the rows
        // overlapping across the one-column shift.
        extend(st.l - 1, 2, false, terms);
        if acute {
            // Turn at a sharp wedge: the next row starts one column right,
            // which overlaps only if the wedge row has width at least 2.
            if st.w >= 2 {
                extend(st.l + 1, 1, true, terms);
            }
        } else {
            // Flat pair: the row above the wedge repeats its left edge.
            extend(st.l, 1, true, terms);
        }
    } else if st.w >= 2 {
        extend(st.l + 1, 1, true, terms);
    }
}

/// The descending chain of source cells — cells with neither a west nor a
/// south neighbour — or `None` when the minimal cells do not form one
/// unit-step chain.  The chain always contains the bottom row's leftmost
/// cell, so when it exists its top cell sits in row `len - 1`.
fn source_chain(p: &Polyomino) -> Option<u32> {
    let mut mins: Vec<(i64, i64)> = p
        .cells()
        .iter()
        .copied()
        .filter(|&(c, r)| !p.contains((c - 1, r)) && !p.contains((c, r - 1)))
        .collect();
    mins.sort_unstable();
    for pair in mins.windows(2) {
        if pair[1].0 != pair[0].0 + 1 || pair[1].1 != pair[0].1 - 1 {
            return None;
        }
    }
    Some(mins.len() as u32)
}

/// Row of the north-east corner: the top cell of the rightmost column.
fn north_east_row(p: &Polyomino) -> i64 {
    let cmax = p.cells().iter().map(|&(c, _)| c).max().expect("nonempty");
    p.cells()
        .iter()
        .filter(|&&(c, _)| c == cmax)
        .map(|&(_, r)| r)
        .max()
        .expect("nonempty")
}

/// The series of one symmetry class in `(t, q)`, by enumerating shapes and
/// testing their stabilizers.
///
/// A cap on `t` doubles as the enumeration's half-perimeter bound, which is
/// what makes deep-in-`q` but perimeter-limited requests feasible; without
/// one the truncation depth is the only bound and must stay within the
/// refusal range.
pub fn oracle_series_sym(id: SymClassId, spec: &TruncationSpec) -> Result<Series> {
    require_vars(spec, &[T], "a symmetry-class series")?;
    let mut terms: Vec<(ExpVec, Coeff)> = Vec::new();
    for (p, stab) in shapes_with_stabilizers(spec)? {
        if sym_class_test(id, stab, p.width()) {
            push_term(
                &mut terms,
                &[(T, p.half_perimeter() as i32), (Q, p.area() as i32)],
                1,
            );
        }
    }
    Series::from_terms(spec, terms)
}

/// Convex polyominoes fixed by all eight isometries, in `(t, q)`.
///
/// This is the one series the formula layer itself leans on (when refining
/// orbit counts down to exact stabilizers); it has no closed form in this
/// crate and is served by enumeration on the same bounds as the other
/// symmetry classes.
pub fn fully_symmetric_series(spec: &TruncationSpec) -> Result<Series> {
    require_vars(spec, &[T], "the fully symmetric series")?;
    let mut terms: Vec<(ExpVec, Coeff)> = Vec::new();
    for (p, stab) in shapes_with_stabilizers(spec)? {
        if stab == Subgroup::Full {
            push_term(
                &mut terms,
                &[(T, p.half_perimeter() as i32), (Q, p.area() as i32)],
                1,
            );
        }
    }
    Series::from_terms(spec, terms)
}

fn shapes_with_stabilizers(spec: &TruncationSpec) -> Result<Vec<(Polyomino, Subgroup)>> {
    let max_halfperim = spec.cap(T).unwrap_or(spec.qmax() + 1);
    let shapes = enumerate_convex(spec.qmax(), max_halfperim)?;
    Ok(pool::install(|| {
        shapes
            .into_par_iter()
            .map(|p| {
                let stab = p.stabilizer();
                (p, stab)
            })
            .collect()
    }))
}

fn sym_class_test(id: SymClassId, stab: Subgroup, width: u32) -> bool {
    use GroupElement as G;
    let even = width % 2 == 0;
    match id {
        SymClassId::Fr => stab.contains(G::R),
        SymClassId::Fr2 => stab.contains(G::R2),
        SymClassId::Fr2Even => stab.contains(G::R2) && even,
        SymClassId::Fr2Odd => stab.contains(G::R2) && !even,
        SymClassId::Fv => stab.contains(G::V),
        SymClassId::Fh => stab.contains(G::H),
        SymClassId::Fhv => stab.contains(G::H) && stab.contains(G::V),
        SymClassId::Fd1 => stab.contains(G::D1),
        SymClassId::Fd2 => stab.contains(G::D2),
        // A shape fixed by both diagonals is square-ish: its central
        // diagonal has one cell per column, so its parity is the width's.
        SymClassId::Fd1d2 => stab.contains(G::D1) && stab.contains(G::D2),
        SymClassId::Fd1d2Even => stab.contains(G::D1) && stab.contains(G::D2) && even,
        SymClassId::Fd1d2Odd => stab.contains(G::D1) && stab.contains(G::D2) && !even,
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Var;

    fn spec(qmax: u32, vars: &[Var]) -> TruncationSpec {
        TruncationSpec::new(qmax, vars)
    }

    fn area_counts(shapes: &[Polyomino], up_to: u32) -> Vec<usize> {
        (1..=up_to)
            .map(|a| shapes.iter().filter(|p| p.area() == a).count())
            .collect()
    }

    #[test]
    fn small_enumeration_counts_and_uniqueness() {
        let shapes = enumerate_convex(4, 5).expect("small bounds");
        assert_eq!(area_counts(&shapes, 4), vec![1, 2, 6, 19]);
        let distinct: BTreeSet<&Polyomino> = shapes.iter().collect();
        assert_eq!(distinct.len(), shapes.len(), "no shape may appear twice");
        // Half-perimeter 2 leaves room for the unit cell only.
        let unit = enumerate_convex(14, 2).expect("tiny perimeter");
        assert_eq!(unit.len(), 1);
        assert_eq!(unit[0].cells(), &[(0, 0)]);
        // The five open cells of area <= 3 plus the four L-trominoes: nine
        // shapes in total up to area 3.
        assert_eq!(shapes.iter().filter(|p| p.area() <= 3).count(), 9);
    }

    #[test]
    fn enumeration_is_deterministic_and_width_ordered() {
        let a = enumerate_convex(6, 7).expect("bounds");
        let b = enumerate_convex(6, 7).expect("bounds");
        assert_eq!(a, b);
        let widths: Vec<u32> = a.iter().map(|p| p.width()).collect();
        assert!(widths.windows(2).all(|w| w[0] <= w[1]), "width-major order");
        let mut streamed = Vec::new();
        for_each_convex(6, 7, |p| streamed.push(p.clone())).expect("bounds");
        assert_eq!(streamed, a);
    }

    #[test]
    fn from_cells_validates_and_normalizes() {
        assert!(Polyomino::from_cells([(5, 7)]).expect("unit").cells() == [(0, 0)]);
        let square = Polyomino::from_cells([(0, 0), (1, 0), (0, 1), (1, 1)]).expect("square");
        assert_eq!(square.area(), 4);
        assert_eq!(square.half_perimeter(), 4);
        assert!(Polyomino::from_cells(std::iter::empty()).is_err());
        // Diagonal contact is not connectivity.
        assert!(Polyomino::from_cells([(0, 0), (1, 1)]).is_err());
        // A gap in a row.
        assert!(Polyomino::from_cells([(0, 0), (2, 0)]).is_err());
        // Connected, rows fine, but a column with a hole.
        assert!(Polyomino::from_cells([(0, 0), (1, 0), (1, 1), (1, 2), (0, 2)]).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let unit = Polyomino::from_cells([(0, 0)]).expect("unit");
        assert_eq!(unit.stabilizer(), Subgroup::Full);
        let domino = Polyomino::from_cells([(0, 0), (1, 0)]).expect("domino");
        assert_eq!(domino.stabilizer(), Subgroup::HV);
        // This L-tromino lies on the rising diagonal; its mirror image has
        // the other diagonal stabilizer.
        let ell = Polyomino::from_cells([(0, 0), (1, 0), (0, 1)]).expect("tromino");
        assert_eq!(ell.stabilizer(), Subgroup::D2);
        assert_eq!(ell.transform(GroupElement::V).stabilizer(), Subgroup::D1);
    }

    #[test]
    fn area_census_matches_known_table() {
        let expected: [[i64; 10]; 10] = [
            [1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
            [2, 0, 2, 1, 2, 0, 1, 2, 0, 0],
            [6, 0, 2, 2, 2, 2, 2, 2, 0, 0],
            [19, 1, 7, 7, 5, 1, 5, 3, 1, 8],
            [59, 1, 7, 17, 5, 5, 11, 3, 1, 40],
            [176, 0, 24, 50, 12, 4, 29, 4, 0, 128],
            [502, 0, 22, 131, 12, 14, 72, 4, 2, 440],
            [1374, 2, 74, 363, 26, 12, 191, 6, 2, 1240],
            // The asymmetric count here is forced by the others: subtracting
            // the once- and twice-symmetric counts from 3630 leaves 3456.
            [3630, 2, 62, 924, 26, 38, 478, 6, 2, 3456],
            [9312, 0, 208, 2380, 52, 32, 1211, 6, 2, 8952],
        ];
        let rows = census(CensusBy::Area, 10).expect("bounds");
        assert_eq!(rows.len(), 10);
        for (row, want) in rows.iter().zip(expected.iter()) {
            assert_eq!(&row.columns(), want, "area {}", row.size);
        }
    }

    #[test]
    fn perimeter_census_matches_known_rows() {
        let expected: [(u32, [i64; 10]); 6] = [
            (4, [1, 1, 1, 1, 1, 1, 1, 1, 1, 0]),
            (6, [2, 0, 2, 1, 2, 0, 1, 2, 0, 0]),
            (8, [7, 1, 3, 3, 3, 3, 3, 3, 1, 0]),
            (10, [28, 0, 8, 9, 6, 0, 6, 4, 0, 16]),
            (12, [120, 2, 16, 35, 12, 14, 24, 6, 4, 72]),
            (14, [528, 0, 40, 142, 24, 0, 77, 8, 0, 456]),
        ];
        let rows = census(CensusBy::Perimeter, 14).expect("bounds");
        assert_eq!(rows.len(), expected.len());
        for (row, (size, want)) in rows.iter().zip(expected.iter()) {
            assert_eq!(row.size, *size);
            assert_eq!(&row.columns(), want, "perimeter {size}");
        }
    }

    #[test]
    fn census_csv_layout_is_fixed() {
        let rows = census(CensusBy::Area, 2).expect("bounds");
        assert_eq!(
            census_csv(&rows),
            "size,id,r,r2,rotation,h_v,d1_d2,congruence,hv,d1d2,asym\n\
             1,1,1,1,1,1,1,1,1,1,0\n\
             2,2,0,2,1,2,0,1,2,0,0\n"
        );
    }

    #[test]
    fn averaged_orbits_match_directly_counted_orbits() {
        for by in [CensusBy::Area, CensusBy::Perimeter] {
            let max = match by {
                CensusBy::Area => 8,
                CensusBy::Perimeter => 14,
            };
            let rows = census(by, max).expect("bounds");
            let direct = direct_orbit_counts(by, max).expect("bounds");
            assert_eq!(rows.len(), direct.len());
            for (row, (size, rot, cong)) in rows.iter().zip(direct) {
                assert_eq!(row.size, size);
                assert_eq!(row.rotation_orbits, rot, "rotation orbits at {size}");
                assert_eq!(row.congruence_orbits, cong, "congruence orbits at {size}");
            }
        }
    }

    #[test]
    fn oversized_requests_are_refused() {
        assert!(matches!(
            enumerate_convex(15, 13),
            Err(Error::RefusedScale(_))
        ));
        assert!(matches!(census(CensusBy::Area, 15), Err(Error::RefusedScale(_))));
        assert!(matches!(
            census(CensusBy::Perimeter, 26),
            Err(Error::RefusedScale(_))
        ));
        let deep = spec(15, &[X, Y]);
        assert!(matches!(
            oracle_series_base(ClassId::C, &deep),
            Err(Error::RefusedScale(_))
        ));
        // A cap on t bounds the half-perimeter, which rescues deep truncations.
        let capped = spec(15, &[T]).with_cap(T, 8);
        assert!(oracle_series_sym(SymClassId::Fr, &capped).is_ok());
        assert!(matches!(
            oracle_series_sym(SymClassId::Fr, &spec(15, &[T])),
            Err(Error::RefusedScale(_))
        ));
    }

    #[test]
    fn empty_row_families_need_a_height_cap() {
        for id in [ClassId::P0, ClassId::T0] {
            assert!(matches!(
                oracle_series_base(id, &spec(6, &[X, Y])),
                Err(Error::RefusedScale(_))
            ));
        }
    }

    #[test]
    fn every_base_family_matches_its_formula() {
        let q = 7;
        for id in ClassId::ALL {
            let sp = match id {
                ClassId::P0 | ClassId::T0 => spec(q, &[X, Y]).with_cap(Y, 5),
                ClassId::P1 | ClassId::Ts => spec(q, &[U, X, Y]),
                ClassId::D => spec(q, &[S, X, Y]),
                ClassId::Y1 | ClassId::Y2 | ClassId::Ds => spec(q, &[X, Y, Z]),
                ClassId::E1
                | ClassId::E2
                | ClassId::E3
                | ClassId::Eall
                | ClassId::A1
                | ClassId::A2
                | ClassId::A3
                | ClassId::Aall => spec(q, &[X, Z, W]),
                _ => spec(q, &[X, Y]),
            };
            let by_enumeration = oracle_series_base(id, &sp).expect("enumeration");
            let by_formula = crate::series_for(id, &sp).expect("formula");
            assert_eq!(by_enumeration, by_formula, "family {id} diverges");
        }
    }

    #[test]
    fn corner_subfamilies_partition_the_doubly_shifted_stacks() {
        let sp = spec(8, &[X, Z, W]);
        for (one, two, three, all) in [
            (ClassId::E1, ClassId::E2, ClassId::E3, ClassId::Eall),
            (ClassId::A1, ClassId::A2, ClassId::A3, ClassId::Aall),
        ] {
            let s1 = oracle_series_base(one, &sp).expect("enumeration");
            let s2 = oracle_series_base(two, &sp).expect("enumeration");
            let s3 = oracle_series_base(three, &sp).expect("enumeration");
            let sa = oracle_series_base(all, &sp).expect("enumeration");
            assert_eq!(&(&s1 + &s2) - &s3, sa, "inclusion-exclusion for {all}");
        }
    }

    #[test]
    fn staircase_split_convention_is_the_one_that_counts_shapes() {
        // The empty strip stack above the seam must be allowed: dropping it
        // undercounts, and the enumeration is what pins the convention.
        let sp = spec(10, &[X, Y, Z]);
        let oracle_y2 = oracle_series_base(ClassId::Y2, &sp).expect("enumeration");
        let with_constant = crate::symmetry::series_y2_with(&sp, true).expect("formula");
        let without_constant = crate::symmetry::series_y2_with(&sp, false).expect("formula");
        assert_eq!(oracle_y2, with_constant);
        assert_ne!(oracle_y2, without_constant);
        let oracle_ds = oracle_series_base(ClassId::Ds, &sp).expect("enumeration");
        let formula_ds = crate::symmetry::series_ds(&sp).expect("formula");
        assert_eq!(oracle_ds, formula_ds);
    }

    #[test]
    fn every_symmetry_class_matches_its_formula() {
        let sp = spec(7, &[T]);
        for id in SymClassId::ALL {
            let by_enumeration = oracle_series_sym(id, &sp).expect("enumeration");
            let by_formula = crate::symmetry::series_sym(id, &sp).expect("formula");
            assert_eq!(by_enumeration, by_formula, "class {id} diverges");
        }
        // Spot values: the five mirror-symmetric hexominoes of area 5, and
        // the two both-diagonals shapes of half-perimeter 6 and area 7.
        let fv = oracle_series_sym(SymClassId::Fv, &sp).expect("enumeration");
        assert_eq!(fv.coeff(&[(T, 6), (Q, 5)]), Coeff::from(5));
        let fdd = oracle_series_sym(SymClassId::Fd1d2, &sp).expect("enumeration");
        assert_eq!(fdd.coeff(&[(T, 6), (Q, 7)]), Coeff::from(2));
    }

    #[test]
    fn convex_series_total_matches_census() {
        let sp = spec(6, &[X, Y]);
        let c = oracle_series_base(ClassId::C, &sp).expect("enumeration");
        assert_eq!(c.coeff_sum_at_q(6), Coeff::from(176));
    }

    #[test]
    fn fully_symmetric_first_terms() {
        let s = fully_symmetric_series(&spec(5, &[T])).expect("enumeration");
        // Unit cell, square of side 2, and the plus-shaped pentomino.
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coeff(&[(T, 2), (Q, 1)]), Coeff::from(1));
        assert_eq!(s.coeff(&[(T, 4), (Q, 4)]), Coeff::from(1));
        assert_eq!(s.coeff(&[(T, 6), (Q, 5)]), Coeff::from(1));
    }
}
