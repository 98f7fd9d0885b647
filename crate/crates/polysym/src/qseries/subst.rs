//! Substitution, coefficient extraction, and exact division.
//!
//! Substitution here is simultaneous: every image reads the exponents of the
//! *original* term, so chains like `z -> q^{-2}, w -> q^{-2}, q -> q^4` do
//! not feed into each other. Reciprocal images (negative powers of `q`) are
//! opt-in via a caller flag; a surviving output term with a negative
//! `q`-exponent is always an error, because the ring does not contain it.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::fmt_impl::monomial_string;
use super::{Coeff, ExpVec, Series, TruncationSpec, Var};
use crate::error::{Error, Result};

/// A plain monomial image for one substituted variable: `var -> coeff * monomial`.
#[derive(Clone, Debug)]
pub struct Image {
    pub(crate) var: Var,
    pub(crate) coeff: Coeff,
    pub(crate) monomial: ExpVec,
}

impl Image {
    /// `var -> monomial` with coefficient 1, e.g. `Image::map(Var::X, &[(Var::T, 4)])`
    /// for `x -> t^4`.
    pub fn map(var: Var, exps: &[(Var, i32)]) -> Image {
        Image {
            var,
            coeff: Coeff::one(),
            monomial: ExpVec::of(exps),
        }
    }

    /// `var -> coeff * monomial`.
    pub fn map_scaled(var: Var, coeff: impl Into<Coeff>, exps: &[(Var, i32)]) -> Image {
        Image {
            var,
            coeff: coeff.into(),
            monomial: ExpVec::of(exps),
        }
    }
}

/// `coeff^k`, where `k` may be negative only when `coeff` is a unit.
fn coeff_pow(c: &Coeff, k: i32) -> Result<Coeff> {
    if k >= 0 {
        Ok(c.pow(k as u32))
    } else if c.is_one() {
        Ok(Coeff::one())
    } else if (-c).is_one() {
        Ok(if k % 2 == 0 { Coeff::one() } else { -Coeff::one() })
    } else {
        Err(Error::InvalidExponent {
            var: "coefficient",
            exponent: k,
            reason: "negative power of a non-unit image coefficient",
        })
    }
}

impl Series {
    /// Simultaneous substitution of monomial images into some variables.
    ///
    /// Variables without an image pass through unchanged. The caller supplies
    /// the output spec and is responsible for having computed `self` deeply
    /// enough that every retained output term is complete. Images with
    /// negative `q`-exponents require `allow_reciprocal_q`; an output term
    /// that still carries a negative `q`-exponent after coefficient merging
    /// is [`Error::NegativeFinalExponent`].
    pub fn substitute(
        &self,
        images: &[Image],
        out: &TruncationSpec,
        allow_reciprocal_q: bool,
    ) -> Result<Series> {
        for img in images {
            if !allow_reciprocal_q && img.monomial.q() < 0 {
                return Err(Error::InvalidExponent {
                    var: img.var.name(),
                    exponent: img.monomial.q(),
                    reason: "reciprocal q-image requires allow_reciprocal_q",
                });
            }
        }
        self.substitute_inner(None, images, out)
    }

    /// Substitution where the images of one variable depend on its exponent.
    ///
    /// Every term `c * v^m * R` is rewritten as `c * f(m) * R'`, where `R'`
    /// is the rest of the monomial after the simultaneous plain `images`.
    /// `f(0)` must be the identity image `(1, empty)`; for the caller's
    /// truncation analysis to be sound the `q`-degree of `f(m)` should be
    /// nondecreasing and unbounded in `m`.
    pub fn substitute_graded(
        &self,
        v: Var,
        f: impl Fn(u32) -> (Coeff, ExpVec),
        images: &[Image],
        out: &TruncationSpec,
    ) -> Result<Series> {
        let (c0, e0) = f(0);
        assert!(
            c0.is_one() && e0.is_zero(),
            "graded image must fix the v-free part: f(0) = (1, empty)"
        );
        assert!(
            images.iter().all(|img| img.var != v),
            "plain image clashes with the graded variable"
        );
        self.substitute_inner(Some((v, &f)), images, out)
    }

    fn substitute_inner(
        &self,
        graded: Option<(Var, &dyn Fn(u32) -> (Coeff, ExpVec))>,
        images: &[Image],
        out: &TruncationSpec,
    ) -> Result<Series> {
        let mut staging: HashMap<ExpVec, Coeff> = HashMap::new();
        for (e, c) in self.iter_terms() {
            let mut rest = *e;
            let mut add = ExpVec::ZERO;
            let mut coeff = c.clone();
            if let Some((v, f)) = graded {
                let m = e.get(v);
                if m < 0 {
                    return Err(Error::InvalidExponent {
                        var: v.name(),
                        exponent: m,
                        reason: "graded substitution needs nonnegative exponents",
                    });
                }
                rest = rest.with(v, 0);
                let (fc, fm) = f(m as u32);
                coeff *= fc;
                add = add.plus(&fm);
            }
            for img in images {
                let k = e.get(img.var);
                rest = rest.with(img.var, 0);
                if k != 0 {
                    add = add.plus(&img.monomial.scaled(k));
                    coeff *= coeff_pow(&img.coeff, k)?;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let mono = rest.plus(&add);
            let slot = staging.entry(mono).or_insert_with(Coeff::zero);
            *slot += coeff;
        }
        let mut result = Series::zero(out);
        for (e, c) in staging {
            if c.is_zero() {
                continue;
            }
            if e.q() < 0 {
                return Err(Error::NegativeFinalExponent {
                    term: monomial_string(&e),
                });
            }
            result.accumulate(e, c)?;
        }
        Ok(result)
    }

    /// Extracts the coefficient of `v^k` as a series over the remaining
    /// variables; `v` leaves the variable set.
    pub fn coeff_extract(&self, v: Var, k: i32) -> Result<Series> {
        let out = self.spec().without_var(v);
        let mut result = Series::zero(&out);
        for (e, c) in self.iter_terms() {
            if e.get(v) == k {
                result.accumulate(e.with(v, 0), c.clone())?;
            }
        }
        Ok(result)
    }

    /// Sets `v = 1` by summing over its exponents; `v` leaves the variable
    /// set.
    pub fn eval_at_one(&self, v: Var) -> Result<Series> {
        let out = self.spec().without_var(v);
        let mut result = Series::zero(&out);
        for (e, c) in self.iter_terms() {
            result.accumulate(e.with(v, 0), c.clone())?;
        }
        Ok(result)
    }

    /// Exact division: finds `g` with `g * d == self` as (Laurent)
    /// polynomials, reporting [`Error::InexactDivision`] with the first
    /// unresolved term when no such `g` exists.
    ///
    /// This is polynomial-sense division — `(1 - q^2)/(1 + q)` succeeds,
    /// `(1 + q^2)/(1 + q)` fails — as opposed to inversion in the truncated
    /// ring, which is what [`Series::invert`] provides for unit series.
    pub fn divide_exact(&self, d: &Series) -> Result<Series> {
        if self.spec() != d.spec() {
            return Err(Error::SpecMismatch {
                left: self.spec().to_string(),
                right: d.spec().to_string(),
            });
        }
        assert!(!d.is_zero(), "division by the zero series");
        // Reduction from the lexicographically largest term downward. The
        // intermediate remainder is kept untruncated so that slop beyond
        // qmax cannot masquerade as divisibility.
        let mut run: BTreeMap<ExpVec, Coeff> = self
            .iter_terms()
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        let divisor = d.sorted_terms();
        let (lead_e, lead_c) = {
            let (e, c) = divisor.last().expect("nonzero divisor");
            (*e, (*c).clone())
        };
        let grid = 4 * self.spec().qmax().max(1) as i64;
        let mut quotient: Vec<(ExpVec, Coeff)> = Vec::new();
        while let Some((&re, _)) = run.last_key_value() {
            let rc = run.remove(&re).unwrap();
            if rc.is_zero() {
                continue;
            }
            let inexact = |re: &ExpVec, rc: &Coeff| Error::InexactDivision {
                term: monomial_string(re),
                coeff: rc.to_string(),
            };
            // Quotient monomial and coefficient for this leading term.
            let qm = re.plus(&lead_e.scaled(-1));
            if qm.q() < 0 || qm.nonzero().any(|(_, k)| (k as i64).abs() > grid) {
                return Err(inexact(&re, &rc));
            }
            let (qc, rem) = num_integer::Integer::div_rem(&rc, &lead_c);
            if !rem.is_zero() {
                return Err(inexact(&re, &rc));
            }
            for (e, c) in &divisor {
                if *e == lead_e {
                    continue;
                }
                let slot = run.entry(e.plus(&qm)).or_insert_with(Coeff::zero);
                *slot -= &qc * *c;
                if slot.is_zero() {
                    run.remove(&e.plus(&qm));
                }
            }
            quotient.push((qm, qc));
        }
        Series::from_terms(self.spec(), quotient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(vars: &[Var], qmax: u32) -> TruncationSpec {
        TruncationSpec::new(qmax, vars)
    }

    fn q_pow(s: &TruncationSpec, k: i32) -> Series {
        Series::monomial(s, 1, &[(Var::Q, k)]).unwrap()
    }

    #[test]
    fn plain_substitution_remaps_and_merges() {
        // f = x q + x^2 q^2 under x -> t^2: t^2 q + t^4 q^2
        let sp = spec(&[Var::X], 8);
        let f = Series::from_terms(
            &sp,
            [
                (ExpVec::of(&[(Var::X, 1), (Var::Q, 1)]), Coeff::from(1)),
                (ExpVec::of(&[(Var::X, 2), (Var::Q, 2)]), Coeff::from(1)),
            ],
        )
        .unwrap();
        let out = spec(&[Var::T], 8);
        let g = f
            .substitute(&[Image::map(Var::X, &[(Var::T, 2)])], &out, false)
            .unwrap();
        assert_eq!(g.coeff(&[(Var::T, 2), (Var::Q, 1)]), Coeff::from(1));
        assert_eq!(g.coeff(&[(Var::T, 4), (Var::Q, 2)]), Coeff::from(1));
    }

    #[test]
    fn simultaneous_images_do_not_chain() {
        // x -> q^{-1}, q -> q^2 applied to x q: exponent of q is 2*1 - 1 = 1,
        // not (q^{-1} then squared).
        let sp = spec(&[Var::X], 8);
        let f = Series::monomial(&sp, 1, &[(Var::X, 1), (Var::Q, 1)]).unwrap();
        let out = spec(&[], 8);
        let g = f
            .substitute(
                &[
                    Image::map(Var::X, &[(Var::Q, -1)]),
                    Image::map(Var::Q, &[(Var::Q, 2)]),
                ],
                &out,
                true,
            )
            .unwrap();
        assert_eq!(g.coeff(&[(Var::Q, 1)]), Coeff::from(1));
        assert_eq!(g.num_terms(), 1);
    }

    #[test]
    fn reciprocal_images_need_the_flag() {
        let sp = spec(&[Var::X], 4);
        let f = Series::monomial(&sp, 1, &[(Var::X, 1), (Var::Q, 2)]).unwrap();
        let err = f
            .substitute(&[Image::map(Var::X, &[(Var::Q, -1)])], &spec(&[], 4), false)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidExponent { .. }));
    }

    #[test]
    fn surviving_negative_q_is_reported() {
        let sp = spec(&[Var::X], 4);
        let f = Series::monomial(&sp, 1, &[(Var::X, 3), (Var::Q, 1)]).unwrap();
        let err = f
            .substitute(&[Image::map(Var::X, &[(Var::Q, -1)])], &spec(&[], 4), true)
            .unwrap_err();
        assert!(matches!(err, Error::NegativeFinalExponent { .. }));
    }

    #[test]
    fn graded_substitution_reads_the_exponent() {
        // y^m -> t^{2m} q^{m^2} on 1 + y q + y^2 q^2
        let sp = spec(&[Var::Y], 16);
        let f = Series::from_terms(
            &sp,
            [
                (ExpVec::ZERO, Coeff::from(1)),
                (ExpVec::of(&[(Var::Y, 1), (Var::Q, 1)]), Coeff::from(1)),
                (ExpVec::of(&[(Var::Y, 2), (Var::Q, 2)]), Coeff::from(1)),
            ],
        )
        .unwrap();
        let out = spec(&[Var::T], 16);
        let g = f
            .substitute_graded(
                Var::Y,
                |m| {
                    (
                        Coeff::one(),
                        ExpVec::of(&[(Var::T, 2 * m as i32), (Var::Q, (m * m) as i32)]),
                    )
                },
                &[],
                &out,
            )
            .unwrap();
        assert_eq!(g.coeff(&[]), Coeff::from(1));
        assert_eq!(g.coeff(&[(Var::T, 2), (Var::Q, 2)]), Coeff::from(1));
        assert_eq!(g.coeff(&[(Var::T, 4), (Var::Q, 6)]), Coeff::from(1));
    }

    #[test]
    fn coeff_extract_removes_the_variable() {
        let sp = spec(&[Var::U, Var::X], 8);
        let f = Series::from_terms(
            &sp,
            [
                (
                    ExpVec::of(&[(Var::U, 2), (Var::X, 1), (Var::Q, 3)]),
                    Coeff::from(5),
                ),
                (ExpVec::of(&[(Var::U, 1), (Var::Q, 1)]), Coeff::from(7)),
            ],
        )
        .unwrap();
        let g = f.coeff_extract(Var::U, 2).unwrap();
        assert!(!g.spec().contains_var(Var::U));
        assert_eq!(g.coeff(&[(Var::X, 1), (Var::Q, 3)]), Coeff::from(5));
        assert_eq!(g.num_terms(), 1);
    }

    #[test]
    fn eval_at_one_sums_exponents() {
        let sp = spec(&[Var::S], 8);
        let f = Series::from_terms(
            &sp,
            [
                (ExpVec::of(&[(Var::S, 1), (Var::Q, 2)]), Coeff::from(3)),
                (ExpVec::of(&[(Var::S, 4), (Var::Q, 2)]), Coeff::from(4)),
            ],
        )
        .unwrap();
        let g = f.eval_at_one(Var::S).unwrap();
        assert_eq!(g.coeff(&[(Var::Q, 2)]), Coeff::from(7));
        assert!(!g.spec().contains_var(Var::S));
    }

    #[test]
    fn division_finds_polynomial_quotients() {
        let sp = spec(&[], 8);
        let one = Series::one(&sp);
        let num = &one - &q_pow(&sp, 2); // 1 - q^2
        let den = &one + &q_pow(&sp, 1); // 1 + q
        let quot = num.divide_exact(&den).unwrap();
        assert_eq!(quot, &one - &q_pow(&sp, 1));
    }

    #[test]
    fn division_rejects_non_polynomial_quotients() {
        let sp = spec(&[], 8);
        let one = Series::one(&sp);
        let num = &one + &q_pow(&sp, 2); // 1 + q^2
        let den = &one + &q_pow(&sp, 1); // 1 + q
        let err = num.divide_exact(&den).unwrap_err();
        assert!(matches!(err, Error::InexactDivision { .. }));
    }

    #[test]
    fn division_by_constants_checks_divisibility() {
        let sp = spec(&[], 8);
        let two = Series::constant(&sp, 2);
        let f = Series::from_terms(
            &sp,
            [
                (ExpVec::ZERO, Coeff::from(2)),
                (ExpVec::of(&[(Var::Q, 1)]), Coeff::from(4)),
            ],
        )
        .unwrap();
        let q = f.divide_exact(&two).unwrap();
        assert_eq!(q.coeff(&[]), Coeff::from(1));
        assert_eq!(q.coeff(&[(Var::Q, 1)]), Coeff::from(2));
        let odd = Series::constant(&sp, 3);
        assert!(matches!(
            odd.divide_exact(&two),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn division_by_a_monomial_shifts_exponents() {
        let sp = spec(&[Var::T], 8);
        let f = Series::monomial(&sp, 6, &[(Var::T, 3), (Var::Q, 2)]).unwrap();
        let t2 = Series::monomial(&sp, 2, &[(Var::T, 2)]).unwrap();
        let q = f.divide_exact(&t2).unwrap();
        assert_eq!(q.coeff(&[(Var::T, 1), (Var::Q, 2)]), Coeff::from(3));
    }
}
