//! Vectors and dual vectors over `GF(q)^N`, projective equivalence, and the
//! indexed kets/bras of the two-level model.
//!
//! A `ProjVector` stores its entries exactly as constructed; the canonical
//! representative of its projective class (last nonzero entry scaled to 1) is
//! obtained explicitly via [`ProjVector::canonicalize`]. Dual vectors are
//! likewise kept in their written form so printed tables match the standard
//! labels; label-free comparison goes through [`projective_equal`] on either
//! type.
//!
//! The concrete vectors behind the indexed kets and bras depend on which
//! generator the field construction picked: relabeling the generator permutes
//! the indices `r >= 2`. Everything projective (brackets vanishing,
//! probabilities, correlation tables) is independent of that choice; only the
//! printed labels move. Deterministic field construction pins the labels for
//! any fixed `(p, n)`.

use std::fmt;
use std::sync::Arc;

use crate::gf::{FieldCtx, FieldElement};
use crate::{Error, Result};

/// A nonzero column vector over `GF(q)^N`, representing a state up to
/// nonzero scalar multiples.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjVector {
    ctx: Arc<FieldCtx>,
    entries: Vec<FieldElement>,
}

/// A nonzero row vector (linear functional) representing a measurement
/// outcome.
#[derive(Clone, PartialEq, Eq)]
pub struct DualVector {
    ctx: Arc<FieldCtx>,
    entries: Vec<FieldElement>,
}

/// Label of a projective point of the two-level model: `r` in `[0, q]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpinIndex(pub u64);

macro_rules! vector_common {
    ($ty:ident) => {
        impl $ty {
            pub fn new(ctx: &Arc<FieldCtx>, entries: Vec<FieldElement>) -> Result<Self> {
                if entries.is_empty() || entries.iter().all(|e| e.is_zero()) {
                    return Err(Error::ZeroVector);
                }
                for e in &entries {
                    ctx.element(e.coeffs().to_vec())?;
                }
                Ok(Self { ctx: Arc::clone(ctx), entries })
            }

            /// Entries from prime-subfield residues, for terse construction.
            pub fn from_ints(ctx: &Arc<FieldCtx>, ints: &[u64]) -> Result<Self> {
                Self::new(ctx, ints.iter().map(|&k| ctx.from_int(k)).collect())
            }

            pub fn ctx(&self) -> &Arc<FieldCtx> {
                &self.ctx
            }

            pub fn entries(&self) -> &[FieldElement] {
                &self.entries
            }

            pub fn dim(&self) -> usize {
                self.entries.len()
            }

            /// Scale so the last nonzero entry becomes 1. Idempotent and
            /// constant on projective classes.
            pub fn canonicalize(&self) -> Self {
                let last = self.entries.iter().rposition(|e| !e.is_zero()).expect("nonzero");
                let scale = self.ctx.inv(&self.entries[last]).expect("nonzero entry");
                let entries = self
                    .entries
                    .iter()
                    .map(|e| self.ctx.mul(e, &scale).expect("same ctx"))
                    .collect();
                Self { ctx: Arc::clone(&self.ctx), entries }
            }

            /// Multiply every entry by a scalar; `c` must be nonzero to stay
            /// within the projective class.
            pub fn scale(&self, c: &FieldElement) -> Result<Self> {
                if c.is_zero() {
                    return Err(Error::ZeroVector);
                }
                let entries = self
                    .entries
                    .iter()
                    .map(|e| self.ctx.mul(e, c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self { ctx: Arc::clone(&self.ctx), entries })
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, e) in self.entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({self})", stringify!($ty))
            }
        }
    };
}

vector_common!(ProjVector);
vector_common!(DualVector);

fn same_space<A, B>(a_ctx: &Arc<FieldCtx>, b_ctx: &Arc<FieldCtx>, a: &[A], b: &[B]) -> Result<()> {
    if a_ctx != b_ctx || a.len() != b.len() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// True iff the two vectors differ by a nonzero scalar, i.e. their canonical
/// forms coincide.
pub fn projective_equal(u: &ProjVector, v: &ProjVector) -> Result<bool> {
    same_space(u.ctx(), v.ctx(), u.entries(), v.entries())?;
    Ok(u.canonicalize().entries == v.canonicalize().entries)
}

/// Same comparison for dual vectors.
pub fn projective_equal_dual(x: &DualVector, y: &DualVector) -> Result<bool> {
    same_space(x.ctx(), y.ctx(), x.entries(), y.entries())?;
    Ok(x.canonicalize().entries == y.canonicalize().entries)
}

/// All points of `PG(N-1, q)` as canonical representatives, ordered by the
/// position of the last nonzero entry and then by the integer encoding of the
/// free entries (entry 0 least significant). The length is `[N]_q`.
pub fn enumerate_points(n: usize, ctx: &Arc<FieldCtx>) -> Vec<ProjVector> {
    let q = ctx.q();
    let mut out = Vec::new();
    for pivot in 0..n {
        // entries above the pivot are zero, the pivot is 1, entries below
        // sweep all of GF(q)^pivot.
        let combos = (0..pivot).fold(1u64, |acc, _| acc * q);
        for mut idx in 0..combos {
            let mut entries = Vec::with_capacity(n);
            for _ in 0..pivot {
                entries.push(ctx.decode(idx % q));
                idx /= q;
            }
            entries.push(ctx.one());
            entries.resize(n, ctx.zero());
            out.push(ProjVector { ctx: Arc::clone(ctx), entries });
        }
    }
    out
}

/// The ket `|r>` of the two-level model: `|0> = [1,0]`, `|1> = [0,1]`,
/// `|r> = [a^(r-1), 1]` for `r >= 2` with `a` the field generator.
pub fn ket(r: SpinIndex, ctx: &Arc<FieldCtx>) -> Result<ProjVector> {
    let q = ctx.q();
    let entries = match r.0 {
        0 => vec![ctx.one(), ctx.zero()],
        1 => vec![ctx.zero(), ctx.one()],
        r if r <= q => vec![ctx.pow(ctx.generator(), (r - 1) as i64)?, ctx.one()],
        r => return Err(Error::BadIndex { index: r, max: q }),
    };
    Ok(ProjVector { ctx: Arc::clone(ctx), entries })
}

/// The bra `<r|` dual to the kets: `<0| = [0,-1]`, `<1| = [1,0]`,
/// `<r| = [1, -a^(r-1)]` for `r >= 2`. In characteristic two the minus signs
/// disappear on their own.
pub fn bra(r: SpinIndex, ctx: &Arc<FieldCtx>) -> Result<DualVector> {
    let q = ctx.q();
    let entries = match r.0 {
        0 => vec![ctx.zero(), ctx.neg(&ctx.one())?],
        1 => vec![ctx.one(), ctx.zero()],
        r if r <= q => {
            let ar = ctx.pow(ctx.generator(), (r - 1) as i64)?;
            vec![ctx.one(), ctx.neg(&ar)?]
        }
        r => return Err(Error::BadIndex { index: r, max: q }),
    };
    Ok(DualVector { ctx: Arc::clone(ctx), entries })
}

/// The bracket `<x|psi> = sum_i x_i psi_i` in `GF(q)`.
pub fn bracket(x: &DualVector, psi: &ProjVector) -> Result<FieldElement> {
    same_space(x.ctx(), psi.ctx(), x.entries(), psi.entries())?;
    let ctx = x.ctx();
    let mut acc = ctx.zero();
    for (xe, pe) in x.entries().iter().zip(psi.entries()) {
        acc = ctx.add(&acc, &ctx.mul(xe, pe)?)?;
    }
    Ok(acc)
}

/// True iff the given dual vectors form a basis of the dual space, i.e. the
/// square matrix of their entries has nonzero determinant.
pub fn is_dual_basis(basis: &[DualVector]) -> Result<bool> {
    let n = match basis.first() {
        Some(first) => first.dim(),
        None => return Err(Error::BadBasis("empty dual vector list")),
    };
    if basis.len() != n {
        return Err(Error::BadBasis("need exactly N dual vectors for dimension N"));
    }
    let ctx = basis[0].ctx();
    for x in basis {
        same_space(ctx, x.ctx(), basis[0].entries(), x.entries())?;
    }
    let rows: Vec<Vec<FieldElement>> = basis.iter().map(|x| x.entries().to_vec()).collect();
    Ok(!determinant(ctx, rows)?.is_zero())
}

/// Determinant over the field by fraction-free Gaussian elimination with row
/// swaps.
pub fn determinant(ctx: &Arc<FieldCtx>, mut rows: Vec<Vec<FieldElement>>) -> Result<FieldElement> {
    let n = rows.len();
    let mut det = ctx.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Ok(ctx.zero());
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = ctx.neg(&det)?;
        }
        det = ctx.mul(&det, &rows[col][col])?;
        let inv = ctx.inv(&rows[col][col])?;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = ctx.mul(&rows[r][col], &inv)?;
            for c in col..n {
                let sub = ctx.mul(&factor, &rows[col][c])?;
                rows[r][c] = ctx.sub(&rows[r][c], &sub)?;
            }
        }
    }
    Ok(det)
}

/// Every spin index of the two-level model over this field: `0 ..= q`.
pub fn spin_indices(ctx: &FieldCtx) -> impl Iterator<Item = SpinIndex> {
    (0..=ctx.q()).map(SpinIndex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcount::q_int;

    fn field(q: u64) -> Arc<FieldCtx> {
        FieldCtx::for_order(q).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let f3 = field(3);
        let v = ProjVector::from_ints(&f3, &[2, 2]).unwrap();
        assert_eq!(v.canonicalize(), ProjVector::from_ints(&f3, &[1, 1]).unwrap());
        let v = ProjVector::from_ints(&f3, &[2, 0]).unwrap();
        assert_eq!(v.canonicalize(), ProjVector::from_ints(&f3, &[1, 0]).unwrap());

        let f4 = field(4);
        let a = f4.element(vec![0, 1]).unwrap();
        let v = ProjVector::new(&f4, vec![a.clone(), a]).unwrap();
        assert_eq!(v.canonicalize(), ProjVector::from_ints(&f4, &[1, 1]).unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent_and_class_constant() {
        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            for v in enumerate_points(3, &f) {
                assert_eq!(v.canonicalize(), v.canonicalize().canonicalize());
                for c in f.enumerate_elements().iter().filter(|c| !c.is_zero()) {
                    let scaled = v.scale(c).unwrap();
                    assert_eq!(scaled.canonicalize(), v.canonicalize());
                }
            }
        }
    }

    #[test]
    fn projective_equal_examples() {
        let f5 = field(5);
        let u = ProjVector::from_ints(&f5, &[1, 2]).unwrap();
        let v = ProjVector::from_ints(&f5, &[2, 4]).unwrap();
        assert!(projective_equal(&u, &v).unwrap());
        let e0 = ProjVector::from_ints(&f5, &[1, 0]).unwrap();
        let e1 = ProjVector::from_ints(&f5, &[0, 1]).unwrap();
        assert!(!projective_equal(&e0, &e1).unwrap());

        let f4 = field(4);
        let a = f4.element(vec![0, 1]).unwrap();
        let a1 = f4.element(vec![1, 1]).unwrap();
        let x = ProjVector::new(&f4, vec![a, f4.one()]).unwrap();
        let y = ProjVector::new(&f4, vec![a1, f4.one()]).unwrap();
        assert!(!projective_equal(&x, &y).unwrap());
    }

    #[test]
    fn zero_vector_is_rejected() {
        let f2 = field(2);
        assert_eq!(ProjVector::from_ints(&f2, &[0, 0]).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn point_enumeration_counts_and_order() {
        let f2 = field(2);
        let pts = enumerate_points(2, &f2);
        let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["[1, 0]", "[0, 1]", "[1, 1]"]);

        assert_eq!(enumerate_points(2, &field(3)).len(), 4);
        assert_eq!(enumerate_points(4, &f2).len(), 15);

        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            for n in 1..=4usize {
                let expected = q_int(n as u64, q);
                assert_eq!(
                    crate::qcount::QInt::from(enumerate_points(n, &f).len() as u64),
                    expected
                );
            }
        }
    }

    #[test]
    fn points_are_pairwise_inequivalent() {
        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            let pts = enumerate_points(3, &f);
            for (i, u) in pts.iter().enumerate() {
                for v in &pts[i + 1..] {
                    assert!(!projective_equal(u, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn kets_match_their_defining_form() {
        let f4 = field(4);
        assert_eq!(ket(SpinIndex(0), &f4).unwrap().to_string(), "[1, 0]");
        assert_eq!(ket(SpinIndex(1), &f4).unwrap().to_string(), "[0, 1]");
        // |3> = [a^2, 1]
        let a2 = f4.pow(f4.generator(), 2).unwrap();
        assert_eq!(ket(SpinIndex(3), &f4).unwrap().entries()[0], a2);
        assert!(ket(SpinIndex(5), &f4).is_err());
    }

    #[test]
    fn kets_exhaust_the_projective_line() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field(q);
            let kets: Vec<_> = spin_indices(&f).map(|r| ket(r, &f).unwrap()).collect();
            assert_eq!(kets.len() as u64, q + 1);
            for (i, u) in kets.iter().enumerate() {
                for v in &kets[i + 1..] {
                    assert!(!projective_equal(u, v).unwrap());
                }
            }
            let points = enumerate_points(2, &f);
            for k in &kets {
                assert!(points.iter().any(|p| projective_equal(p, k).unwrap()));
            }
        }
    }

    #[test]
    fn bras_match_their_defining_form() {
        let f3 = field(3);
        assert_eq!(bra(SpinIndex(0), &f3).unwrap().to_string(), "[0, 2]"); // -1 = 2 mod 3
        let f2 = field(2);
        assert_eq!(bra(SpinIndex(0), &f2).unwrap().to_string(), "[0, 1]"); // characteristic two
        let f5 = field(5);
        let b2 = bra(SpinIndex(2), &f5).unwrap();
        let a = f5.generator().clone();
        assert_eq!(b2.entries()[0], f5.one());
        assert_eq!(b2.entries()[1], f5.neg(&a).unwrap());
    }

    #[test]
    fn bracket_vanishes_exactly_on_matching_indices() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field(q);
            for r in spin_indices(&f) {
                for s in spin_indices(&f) {
                    let val = bracket(&bra(r, &f).unwrap(), &ket(s, &f).unwrap()).unwrap();
                    assert_eq!(val.is_zero(), r.0 == s.0, "q={q}, r={}, s={}", r.0, s.0);
                }
            }
        }
    }

    #[test]
    fn bracket_examples_and_bilinearity() {
        let f3 = field(3);
        let b1 = bra(SpinIndex(1), &f3).unwrap();
        let k0 = ket(SpinIndex(0), &f3).unwrap();
        assert_eq!(bracket(&b1, &k0).unwrap(), f3.one());
        let b0 = bra(SpinIndex(0), &f3).unwrap();
        let k2 = ket(SpinIndex(2), &f3).unwrap();
        assert_eq!(bracket(&b0, &k2).unwrap(), f3.neg(&f3.one()).unwrap());

        for c in f3.enumerate_elements().iter().filter(|c| !c.is_zero()) {
            let lhs = bracket(&b0, &k2.scale(c).unwrap()).unwrap();
            let rhs = f3.mul(c, &bracket(&b0, &k2).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_basis_detection() {
        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            for r in spin_indices(&f) {
                for s in spin_indices(&f) {
                    let pair = [bra(r, &f).unwrap(), bra(s, &f).unwrap()];
                    assert_eq!(is_dual_basis(&pair).unwrap(), r.0 != s.0);
                }
            }
        }
        let f2 = field(2);
        let one = [bra(SpinIndex(0), &f2).unwrap()];
        assert!(is_dual_basis(&one).is_err());
    }

    #[test]
    fn mismatched_spaces_error() {
        let f2 = field(2);
        let f3 = field(3);
        let x = bra(SpinIndex(0), &f2).unwrap();
        let psi = ket(SpinIndex(0), &f3).unwrap();
        assert_eq!(bracket(&x, &psi).unwrap_err(), Error::FieldMismatch);
    }
}
