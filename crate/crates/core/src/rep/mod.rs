//! Finite-dimensional representations of finite quivers.

mod ar;
mod endo;
mod knit;

pub use ar::{ar_sequence_ending_at, ArSequence};
pub use knit::{knit_component, knit_preinjective, Knitted};
pub use endo::{endomorphism_radical, is_indecomposable, is_isomorphic, EndoAlgebra};

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::matrix::{Matrix, SpanTracker};
use crate::quiver::Quiver;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("representation shape mismatch: {0}")]
    Shape(String),
    #[error("the quiver has an oriented cycle; this needs an acyclic quiver")]
    Cyclic,
    #[error("the zero representation has no indecomposability status")]
    ZeroRep,
    #[error("End/rad has dimension {0} over the rationals and no idempotent was exhibited; the rationals may not split this representation")]
    NotSplit(usize),
    #[error("representation is projective, so no almost split sequence ends at it")]
    NotApplicable,
    #[error("representation is not indecomposable")]
    Decomposable,
    #[error("malformed representation file: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// A representation: one vector space per vertex and one matrix per arrow,
/// the matrix of `a: s -> t` having shape `dims[t] x dims[s]`.
#[derive(Clone, Debug)]
pub struct QuiverRep<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for QuiverRep<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps && *self.quiver == *other.quiver
    }
}

impl<F: Field> Eq for QuiverRep<F> {}

/// A family of linear maps, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism<F: Field> {
    maps: Vec<Matrix<F>>,
}

impl<F: Field> QuiverRep<F> {
    pub fn from_parts(quiver: Arc<Quiver>, field: &F, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, RepError> {
        if dims.len() != quiver.vertex_count() || maps.len() != quiver.arrow_count() {
            return Err(RepError::Shape("wrong number of spaces or maps".into()));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.tgt], dims[a.src]) {
                return Err(RepError::Shape(format!(
                    "map of `{}` has shape {:?}, expected {:?}",
                    a.id,
                    m.shape(),
                    (dims[a.tgt], dims[a.src])
                )));
            }
        }
        Ok(QuiverRep {
            quiver,
            field: field.clone(),
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: &F) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        QuiverRep {
            quiver,
            field: field.clone(),
            dims,
            maps,
        }
    }

    /// All maps zero.
    pub fn semisimple(quiver: Arc<Quiver>, field: &F, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.tgt], dims[a.src]))
            .collect();
        QuiverRep {
            quiver,
            field: field.clone(),
            dims,
            maps,
        }
    }

    pub fn simple(quiver: Arc<Quiver>, field: &F, v: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[v] = 1;
        Self::semisimple(quiver, field, dims)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }
    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Vertices with nonzero space.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect();
        QuiverRep {
            quiver: self.quiver.clone(),
            field: self.field.clone(),
            dims,
            maps,
        }
    }

    /// Same data viewed over another (isomorphic, identically indexed) quiver.
    pub fn with_quiver(&self, quiver: Arc<Quiver>) -> Result<Self, RepError> {
        Self::from_parts(quiver, &self.field, self.dims.clone(), self.maps.clone())
    }

    pub fn identity(&self) -> RepMorphism<F> {
        RepMorphism::new(self.dims.iter().map(|&d| Matrix::identity(&self.field, d)).collect())
    }

    pub fn zero_morphism_to(&self, other: &Self) -> RepMorphism<F> {
        RepMorphism::new(
            self.dims
                .iter()
                .zip(&other.dims)
                .map(|(&s, &t)| Matrix::zeros(&self.field, t, s))
                .collect(),
        )
    }

    /// Basis of the homomorphism space, from the kernel of the commutativity equations.
    pub fn hom_basis(&self, other: &Self) -> Vec<RepMorphism<F>> {
        hom_space(self, other)
    }

    pub fn hom_dim(&self, other: &Self) -> usize {
        self.hom_basis(other).len()
    }

    /// Largest semisimple subrepresentation: the common kernel of the outgoing maps.
    pub fn socle_basis(&self) -> Vec<Matrix<F>> {
        (0..self.dims.len())
            .map(|v| {
                let outs = self.quiver.out_arrows(v);
                let mut stacked = Matrix::zeros(&self.field, 0, self.dims[v]);
                for a in outs {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                stacked.kernel()
            })
            .collect()
    }

    /// Radical: the sum of the images of the incoming maps.
    pub fn radical_basis(&self) -> Vec<Matrix<F>> {
        (0..self.dims.len())
            .map(|v| {
                let mut cat = Matrix::zeros(&self.field, self.dims[v], 0);
                for a in self.quiver.in_arrows(v) {
                    cat = cat.hstack(&self.maps[a]);
                }
                cat.image()
            })
            .collect()
    }

    /// Subrepresentation on the given subspaces (columns are bases); they must be stable under the maps.
    pub fn subrep(&self, basis: &[Matrix<F>]) -> Result<(Self, RepMorphism<F>), RepError> {
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            let img = self.maps[i].mul(&basis[a.src]);
            let sol = basis[a.tgt].solve_all(&img);
            let x = sol
                .particular()
                .ok_or_else(|| RepError::Shape(format!("subspaces not stable under `{}`", a.id)))?;
            maps.push(x.clone());
        }
        let sub = Self::from_parts(self.quiver.clone(), &self.field, dims, maps)?;
        Ok((sub, RepMorphism::new(basis.to_vec())))
    }

    /// Quotient by stable subspaces; returns the quotient and the projection.
    pub fn quotient(&self, basis: &[Matrix<F>]) -> Result<(Self, RepMorphism<F>), RepError> {
        let mut projections = Vec::with_capacity(self.dims.len());
        let mut lifts = Vec::with_capacity(self.dims.len());
        for (v, b) in basis.iter().enumerate() {
            let (p, l) = complement(&self.field, self.dims[v], b);
            projections.push(p);
            lifts.push(l);
        }
        let dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| projections[a.tgt].mul(&self.maps[i]).mul(&lifts[a.src]))
            .collect();
        let quot = Self::from_parts(self.quiver.clone(), &self.field, dims, maps)?;
        let proj = RepMorphism::new(projections);
        if !proj.is_homomorphism(self, &quot) {
            return Err(RepError::Shape("subspaces are not a subrepresentation".into()));
        }
        Ok((quot, proj))
    }

    pub fn socle(&self) -> (Self, RepMorphism<F>) {
        self.subrep(&self.socle_basis()).expect("socle is a subrepresentation")
    }

    /// The socle and the quotient by it.
    pub fn soc_and_quotient(&self) -> (Self, Self) {
        let basis = self.socle_basis();
        let soc = self.subrep(&basis).expect("socle is stable").0;
        let quot = self.quotient(&basis).expect("socle is stable").0;
        (soc, quot)
    }

    pub fn rad_sub(&self) -> Self {
        self.subrep(&self.radical_basis()).expect("radical is stable").0
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_basis()
            .iter()
            .zip(&self.dims)
            .map(|(r, d)| d - r.cols())
            .collect()
    }

    pub fn to_json(&self, vertex_label: impl Fn(usize) -> String, arrow_label: impl Fn(usize) -> String) -> Value {
        let mut dims = Map::new();
        for (v, &d) in self.dims.iter().enumerate() {
            if d > 0 {
                dims.insert(vertex_label(v), Value::from(d));
            }
        }
        let mut maps = Map::new();
        for (i, m) in self.maps.iter().enumerate() {
            if m.rows() > 0 && m.cols() > 0 {
                maps.insert(arrow_label(i), m.to_json());
            }
        }
        let mut out = Map::new();
        out.insert("dims".into(), Value::Object(dims));
        out.insert("maps".into(), Value::Object(maps));
        Value::Object(out)
    }

    /// Reads `{"dims": {vertex: n}, "maps": {arrow: rows}}`; absent entries are zero.
    pub fn from_json(quiver: Arc<Quiver>, field: &F, v: &Value) -> Result<Self, RepError> {
        let obj = v.as_object().ok_or_else(|| RepError::Format("expected a JSON object".into()))?;
        let mut dims = vec![0usize; quiver.vertex_count()];
        if let Some(d) = obj.get("dims") {
            let d = d.as_object().ok_or_else(|| RepError::Format("`dims` must be an object".into()))?;
            for (k, n) in d {
                let vi = quiver
                    .vertex_index(k)
                    .map_err(|_| RepError::Format(format!("unknown vertex `{k}` in dims")))?;
                dims[vi] = n
                    .as_u64()
                    .ok_or_else(|| RepError::Format(format!("dimension of `{k}` must be a nonnegative integer")))?
                    as usize;
            }
        }
        let mut maps: Vec<Matrix<F>> = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.tgt], dims[a.src]))
            .collect();
        if let Some(m) = obj.get("maps") {
            let m = m.as_object().ok_or_else(|| RepError::Format("`maps` must be an object".into()))?;
            for (k, rows) in m {
                let ai = quiver
                    .arrow_index(k)
                    .map_err(|_| RepError::Format(format!("unknown arrow `{k}` in maps")))?;
                let a = quiver.arrow(ai);
                maps[ai] = Matrix::from_json(field, rows, dims[a.tgt], dims[a.src])
                    .map_err(|e| RepError::Format(format!("map `{k}`: {e}")))?;
            }
        }
        Self::from_parts(quiver, field, dims, maps)
    }
}

/// For a subspace with basis columns `b` of `k^n`, returns the projection onto a complement's
/// coordinates and the inclusion of that complement. The complement is spanned by standard vectors.
pub fn complement<F: Field>(field: &F, n: usize, b: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    let mut span = SpanTracker::new(field, n);
    for j in 0..b.cols() {
        span.insert(&b.column(j));
    }
    let mut chosen = Vec::new();
    for i in 0..n {
        let mut e = vec![field.zero(); n];
        e[i] = field.one();
        if span.insert(&e) {
            chosen.push(i);
        }
    }
    let mut lift = Matrix::zeros(field, n, chosen.len());
    for (j, &i) in chosen.iter().enumerate() {
        lift.set(i, j, field.one());
    }
    let full = b.hstack(&lift);
    let inv = full.inverse().expect("basis plus complement is invertible");
    let proj = inv.submatrix(b.cols()..n, 0..n);
    (proj, lift)
}

impl<F: Field> RepMorphism<F> {
    pub fn new(maps: Vec<Matrix<F>>) -> Self {
        RepMorphism { maps }
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix<F> {
        &self.maps[v]
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_homomorphism(&self, src: &QuiverRep<F>, tgt: &QuiverRep<F>) -> bool {
        if self.maps.len() != src.dims.len() {
            return false;
        }
        for (v, m) in self.maps.iter().enumerate() {
            if m.shape() != (tgt.dims[v], src.dims[v]) {
                return false;
            }
        }
        src.quiver.arrows().iter().enumerate().all(|(i, a)| {
            tgt.maps[i].mul(&self.maps[a.src]) == self.maps[a.tgt].mul(&src.maps[i])
        })
    }

    /// `g . self`.
    pub fn then(&self, g: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism::new(g.maps.iter().zip(&self.maps).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, other: &RepMorphism<F>) -> RepMorphism<F> {
        RepMorphism::new(self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> RepMorphism<F> {
        RepMorphism::new(self.maps.iter().map(|a| a.scale(c)).collect())
    }

    pub fn neg(&self) -> RepMorphism<F> {
        RepMorphism::new(self.maps.iter().map(|a| a.neg()).collect())
    }

    /// Total rank over all vertices.
    pub fn rank(&self) -> usize {
        self.maps.iter().map(|m| m.rank()).sum()
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.rank() == m.rows())
    }

    /// Concatenated entries, vertex by vertex.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.maps.iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Matrix<F>> {
        self.maps.iter().map(|m| m.kernel()).collect()
    }

    pub fn image_basis(&self) -> Vec<Matrix<F>> {
        self.maps.iter().map(|m| m.image()).collect()
    }
}

/// Coordinates with respect to a fixed linearly independent family of morphisms.
#[derive(Clone, Debug)]
pub struct HomCoords<F: Field> {
    basis: Vec<RepMorphism<F>>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Matrix<F>,
}

impl<F: Field> HomCoords<F> {
    pub fn new(field: &F, basis: Vec<RepMorphism<F>>) -> Self {
        let cols: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.flatten()).collect();
        let len = cols.first().map_or(0, |c| c.len());
        let stacked = Matrix::from_columns(field, len, &cols);
        let pivot_rows = stacked.transpose().pivot_columns();
        let all: Vec<usize> = (0..basis.len()).collect();
        let pivot_inverse = stacked
            .select(&pivot_rows, &all)
            .inverse()
            .expect("basis is linearly independent");
        HomCoords {
            basis,
            pivot_rows,
            pivot_inverse,
        }
    }

    pub fn basis(&self) -> &[RepMorphism<F>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of a morphism known to lie in the span.
    pub fn coords(&self, phi: &RepMorphism<F>) -> Vec<F::Elem> {
        let flat = phi.flatten();
        let picked: Vec<F::Elem> = self.pivot_rows.iter().map(|&r| flat[r].clone()).collect();
        self.pivot_inverse.apply(&picked)
    }

    /// The combination with the given coefficients; `zero` fixes the shape.
    pub fn combine(&self, field: &F, c: &[F::Elem], zero: RepMorphism<F>) -> RepMorphism<F> {
        self.basis
            .iter()
            .zip(c)
            .fold(zero, |acc, (b, ck)| if field.is_zero(ck) { acc } else { acc.add(&b.scale(ck)) })
    }
}

/// Unknown layout for a family of matrices `X_v` of shape `rows[v] x cols[v]`.
pub(crate) struct BlockLayout {
    offsets: Vec<usize>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    pub len: usize,
}

impl BlockLayout {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len());
        let mut len = 0;
        for (r, c) in rows.iter().zip(&cols) {
            offsets.push(len);
            len += r * c;
        }
        BlockLayout { offsets, rows, cols, len }
    }

    pub fn var(&self, v: usize, i: usize, j: usize) -> usize {
        self.offsets[v] + i * self.cols[v] + j
    }

    pub fn unflatten<F: Field>(&self, field: &F, x: &[F::Elem]) -> Vec<Matrix<F>> {
        (0..self.rows.len())
            .map(|v| {
                let n = self.rows[v] * self.cols[v];
                Matrix::from_data(field, self.rows[v], self.cols[v], x[self.offsets[v]..self.offsets[v] + n].to_vec())
            })
            .collect()
    }
}

fn hom_space<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Vec<RepMorphism<F>> {
    let f = &m.field;
    let q = &m.quiver;
    let layout = BlockLayout::new(n.dims.clone(), m.dims.clone());
    let eq_count: usize = q.arrows().iter().map(|a| n.dims[a.tgt] * m.dims[a.src]).sum();
    let mut sys = Matrix::zeros(f, eq_count, layout.len);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.src, a.tgt);
        let na = &n.maps[ai];
        let ma = &m.maps[ai];
        // (N(a) X_s - X_t M(a))[i, j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if !f.is_zero(c) {
                        let col = layout.var(s, k, j);
                        let v = f.add(sys.get(row, col), c);
                        sys.set(row, col, v);
                    }
                }
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if !f.is_zero(c) {
                        let col = layout.var(t, i, k);
                        let v = f.sub(sys.get(row, col), c);
                        sys.set(row, col, v);
                    }
                }
                row += 1;
            }
        }
    }
    sys.rank_kernel()
        .kernel_basis
        .into_iter()
        .map(|x| RepMorphism::new(layout.unflatten(f, &x)))
        .collect()
}

/// Paths of an acyclic quiver as arrow sequences (first arrow first), grouped by endpoints.
pub(crate) fn paths_between(q: &Quiver) -> Result<BTreeMap<(usize, usize), Vec<Vec<usize>>>, RepError> {
    if q.has_oriented_cycle() {
        return Err(RepError::Cyclic);
    }
    let mut out: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for v in 0..q.vertex_count() {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(v, Vec::new())];
        let mut found = Vec::new();
        while let Some((at, path)) = stack.pop() {
            found.push((at, path.clone()));
            for a in q.out_arrows(at).into_iter().rev() {
                let mut p = path.clone();
                p.push(a);
                stack.push((q.arrow(a).tgt, p));
            }
        }
        found.sort_by(|x, y| x.1.len().cmp(&y.1.len()).then_with(|| x.1.cmp(&y.1)));
        for (end, p) in found {
            out.entry((v, end)).or_default().push(p);
        }
    }
    Ok(out)
}

/// Indecomposable injective at `a`: the space at `x` has basis the paths `x -> a`, and an arrow
/// `b: x -> y` sends a path starting with `b` to its remainder.
pub fn injective_at<F: Field>(q: Arc<Quiver>, field: &F, a: usize) -> Result<QuiverRep<F>, RepError> {
    let paths = paths_between(&q)?;
    let basis: Vec<Vec<Vec<usize>>> = (0..q.vertex_count())
        .map(|x| paths.get(&(x, a)).cloned().unwrap_or_default())
        .collect();
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(bi, arr)| {
            let mut m = Matrix::zeros(field, dims[arr.tgt], dims[arr.src]);
            for (j, p) in basis[arr.src].iter().enumerate() {
                if p.first() == Some(&bi) {
                    let rest = &p[1..];
                    let i = basis[arr.tgt].iter().position(|r| r.as_slice() == rest).expect("path remainder");
                    m.set(i, j, field.one());
                }
            }
            m
        })
        .collect();
    QuiverRep::from_parts(q, field, dims, maps)
}

/// Indecomposable projective at `a`: the space at `x` has basis the paths `a -> x`, and an arrow
/// `b: x -> y` extends a path by `b`.
pub fn projective_at<F: Field>(q: Arc<Quiver>, field: &F, a: usize) -> Result<QuiverRep<F>, RepError> {
    let paths = paths_between(&q)?;
    let basis: Vec<Vec<Vec<usize>>> = (0..q.vertex_count())
        .map(|x| paths.get(&(a, x)).cloned().unwrap_or_default())
        .collect();
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(bi, arr)| {
            let mut m = Matrix::zeros(field, dims[arr.tgt], dims[arr.src]);
            for (j, p) in basis[arr.src].iter().enumerate() {
                let mut ext = p.clone();
                ext.push(bi);
                let i = basis[arr.tgt].iter().position(|r| *r == ext).expect("path extension");
                m.set(i, j, field.one());
            }
            m
        })
        .collect();
    QuiverRep::from_parts(q, field, dims, maps)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::fixtures::*;

    pub fn arc(q: Quiver) -> Arc<Quiver> {
        Arc::new(q)
    }

    #[test]
    fn injective_of_a2_opposite() {
        let op = arc(a2().opposite());
        let i = injective_at(op, &Rationals, 0).unwrap();
        assert_eq!(i.dims(), &[1, 1]);
    }

    #[test]
    fn projective_at_sink_is_simple() {
        let q = arc(a2());
        let p = projective_at(q.clone(), &Rationals, 1).unwrap();
        assert_eq!(p, QuiverRep::simple(q, &Rationals, 1));
    }

    #[test]
    fn injective_at_middle_counts_paths() {
        let q = arc(a3());
        let i = injective_at(q.clone(), &Rationals, 1).unwrap();
        // Paths into b: from a (alpha) and the trivial path at b.
        assert_eq!(i.dims(), &[1, 1, 0]);
        let p = projective_at(q, &Rationals, 0).unwrap();
        assert_eq!(p.dims(), &[1, 1, 1]);
    }

    #[test]
    fn socle_of_simple_and_injective() {
        let q = arc(a2().opposite());
        let s = QuiverRep::simple(q.clone(), &Rationals, 0);
        let (soc, quot) = s.soc_and_quotient();
        assert_eq!(soc.dims(), s.dims());
        assert!(quot.is_zero());
        let i = injective_at(q.clone(), &Rationals, 0).unwrap();
        let (soc, quot) = i.soc_and_quotient();
        assert_eq!(soc.dims(), &[1, 0]);
        let ib = injective_at(q, &Rationals, 1).unwrap();
        assert_eq!(quot.dims(), ib.dims());
        assert!(is_isomorphic(&quot, &ib).unwrap());
    }

    #[test]
    fn radical_of_projective() {
        let q = arc(a3());
        let p = projective_at(q, &Rationals, 0).unwrap();
        assert_eq!(p.rad_sub().dims(), &[0, 1, 1]);
        assert_eq!(p.top_dims(), vec![1, 0, 0]);
    }

    #[test]
    fn hom_dimensions() {
        let q = arc(a2());
        let f = PrimeField::new(7).unwrap();
        let pa = projective_at(q.clone(), &f, 0).unwrap();
        let pb = projective_at(q.clone(), &f, 1).unwrap();
        assert_eq!(pb.hom_dim(&pa), 1);
        assert_eq!(pa.hom_dim(&pb), 0);
        assert_eq!(pa.hom_dim(&pa), 1);
        for h in pb.hom_basis(&pa) {
            assert!(h.is_homomorphism(&pb, &pa));
        }
    }

    #[test]
    fn cyclic_quiver_has_no_path_injectives() {
        assert_eq!(injective_at(arc(loop1()), &Rationals, 0).unwrap_err(), RepError::Cyclic);
    }

    #[test]
    fn json_round_trip() {
        let q = arc(kronecker());
        let f = Rationals;
        let m = QuiverRep::from_parts(
            q.clone(),
            &f,
            vec![1, 2],
            vec![Matrix::from_i64(&f, &[&[1], &[0]]), Matrix::from_i64(&f, &[&[0], &[1]])],
        )
        .unwrap();
        let v = m.to_json(|i| q.vertex(i).to_string(), |i| q.arrow(i).id.clone());
        assert_eq!(QuiverRep::from_json(q, &f, &v).unwrap(), m);
    }
}
