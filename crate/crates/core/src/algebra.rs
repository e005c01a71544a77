//! The radical-square-zero algebra of a quiver and morphisms between its projectives.
//!
//! `P[x]` is the left projective at `x`. Its value at `z` has basis the paths of length at
//! most one from `x` to `z`. An arrow `alpha: y -> x` induces `P[alpha]: P[x] -> P[y]`,
//! sending the trivial path at `x` to `alpha`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::rep::{QuiverRep, RepMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("path {path:?} does not run from `{from}` to `{to}`")]
    BadPath { path: ShortPath, from: String, to: String },
    #[error("matrix does not define a module homomorphism between projectives: {0}")]
    NotLinear(String),
}

/// A path of length at most one: a trivial path at a vertex or a single arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShortPath {
    Trivial(usize),
    Arrow(usize),
}

/// `kQ / (kQ+)^2` over a field.
#[derive(Clone, Debug)]
pub struct RszAlgebra<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
}

impl<F: Field> PartialEq for RszAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
    }
}

impl<F: Field> RszAlgebra<F> {
    pub fn new(quiver: Quiver, field: F) -> Self {
        RszAlgebra {
            quiver: Arc::new(quiver),
            field,
        }
    }

    pub fn from_arc(quiver: Arc<Quiver>, field: F) -> Self {
        RszAlgebra { quiver, field }
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

    pub fn dim(&self) -> usize {
        self.quiver.vertex_count() + self.quiver.arrow_count()
    }

    /// Whether `p` runs from `from` to `to`.
    pub fn path_runs(&self, p: ShortPath, from: usize, to: usize) -> bool {
        match p {
            ShortPath::Trivial(v) => v == from && v == to,
            ShortPath::Arrow(a) => {
                let a = self.quiver.arrow(a);
                a.src == from && a.tgt == to
            }
        }
    }

    /// Paths of length at most one from `from` to `to`: the trivial path first, then arrows.
    pub fn short_paths(&self, from: usize, to: usize) -> Vec<ShortPath> {
        let mut out = Vec::new();
        if from == to {
            out.push(ShortPath::Trivial(from));
        }
        out.extend(self.quiver.arrows_between(from, to).into_iter().map(ShortPath::Arrow));
        out
    }

    /// Basis of `Hom(P[x], P[y])`, that is the short paths from `y` to `x`.
    pub fn hom_basis(&self, x: usize, y: usize) -> Vec<ShortPath> {
        self.short_paths(y, x)
    }

    /// Ordered basis of `P[x]`: its trivial path, then arrows out of `x`.
    pub fn proj_basis(&self, x: usize) -> Vec<ShortPath> {
        let mut out = vec![ShortPath::Trivial(x)];
        out.extend(self.quiver.out_arrows(x).into_iter().map(ShortPath::Arrow));
        out
    }

    /// `p` followed by `q` (both short), or `None` when the composite lies in the square of the radical.
    /// `p` runs `a -> b` and `q` runs `b -> c`.
    pub fn concat(&self, p: ShortPath, q: ShortPath) -> Option<ShortPath> {
        match (p, q) {
            (ShortPath::Trivial(_), q) => Some(q),
            (p, ShortPath::Trivial(_)) => Some(p),
            _ => None,
        }
    }

    pub fn path_name(&self, p: ShortPath) -> String {
        match p {
            ShortPath::Trivial(v) => format!("e_{}", self.quiver.vertex(v)),
            ShortPath::Arrow(a) => self.quiver.arrow(a).id.clone(),
        }
    }
}

/// A finitely generated projective `(+)_x P[x] (x) k^{m_x}`, with multiplicities aggregated per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProjModule {
    mults: BTreeMap<usize, usize>,
}

impl ProjModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = ProjModule::new();
        for (v, k) in pairs {
            m.add(v, k);
        }
        m
    }

    pub fn add(&mut self, v: usize, k: usize) {
        if k > 0 {
            *self.mults.entry(v).or_insert(0) += k;
        }
    }

    pub fn mult(&self, v: usize) -> usize {
        self.mults.get(&v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// `(vertex, multiplicity)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mults.iter().map(|(&v, &k)| (v, k))
    }

    pub fn total_mult(&self) -> usize {
        self.mults.values().sum()
    }

    pub fn direct_sum(&self, other: &ProjModule) -> ProjModule {
        let mut out = self.clone();
        for (v, k) in other.iter() {
            out.add(v, k);
        }
        out
    }

    /// Dimension over the field.
    pub fn dim<F: Field>(&self, alg: &RszAlgebra<F>) -> usize {
        self.iter().map(|(v, k)| k * alg.proj_basis(v).len()).sum()
    }

    /// Dimension vector of the underlying representation.
    pub fn dim_vector<F: Field>(&self, alg: &RszAlgebra<F>) -> Vec<usize> {
        let q = alg.quiver();
        (0..q.vertex_count())
            .map(|z| self.iter().map(|(x, k)| k * alg.short_paths(x, z).len()).sum())
            .collect()
    }

    /// Realizes the module as a representation of the quiver.
    pub fn realize<F: Field>(&self, alg: &RszAlgebra<F>) -> QuiverRep<F> {
        let q = alg.quiver();
        let f = alg.field();
        let layout = RealizedLayout::new(alg, self);
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(b, arr)| {
                let mut m = Matrix::zeros(f, layout.dims[arr.tgt], layout.dims[arr.src]);
                // The trivial path at the source of `b` goes to `b`; arrows go to zero.
                for (x, k) in self.iter() {
                    if x != arr.src {
                        continue;
                    }
                    for i in 0..k {
                        let from = layout.position(arr.src, x, ShortPath::Trivial(x), i);
                        let to = layout.position(arr.tgt, x, ShortPath::Arrow(b), i);
                        m.set(to, from, f.one());
                    }
                }
                m
            })
            .collect();
        QuiverRep::from_parts(alg.quiver_arc().clone(), f, layout.dims.clone(), maps)
            .expect("realized projective is well formed")
    }
}

/// Coordinates of `M(z) = (+)_x Q<=1(x, z) (x) k^{m_x}`, ordered by `x`, then path, then copy.
#[derive(Clone, Debug)]
pub struct RealizedLayout {
    pub dims: Vec<usize>,
    offsets: Vec<BTreeMap<(usize, ShortPath), usize>>,
    mults: BTreeMap<usize, usize>,
}

impl RealizedLayout {
    pub fn new<F: Field>(alg: &RszAlgebra<F>, m: &ProjModule) -> Self {
        let q = alg.quiver();
        let mut dims = vec![0; q.vertex_count()];
        let mut offsets = vec![BTreeMap::new(); q.vertex_count()];
        for z in 0..q.vertex_count() {
            let mut pos = 0;
            for (x, k) in m.iter() {
                for p in alg.short_paths(x, z) {
                    offsets[z].insert((x, p), pos);
                    pos += k;
                }
            }
            dims[z] = pos;
        }
        RealizedLayout {
            dims,
            offsets,
            mults: m.mults.clone(),
        }
    }

    /// Coordinate of `p (x) e_i` in the summand `P[x]`, evaluated at `z`.
    pub fn position(&self, z: usize, x: usize, p: ShortPath, i: usize) -> usize {
        debug_assert!(i < self.mults.get(&x).copied().unwrap_or(0));
        self.offsets[z][&(x, p)] + i
    }

    pub fn try_position(&self, z: usize, x: usize, p: ShortPath) -> Option<usize> {
        self.offsets[z].get(&(x, p)).copied()
    }
}

/// A homomorphism between projectives in its unique block form
/// `f = sum over (y, x, gamma) of P[gamma] (x) f_gamma`, with `gamma` a short path from `y` to `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMorphism<F: Field> {
    source: ProjModule,
    target: ProjModule,
    blocks: BTreeMap<(usize, usize, ShortPath), Matrix<F>>,
}

impl<F: Field> ProjMorphism<F> {
    pub fn zero(source: ProjModule, target: ProjModule) -> Self {
        ProjMorphism {
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(field: &F, m: &ProjModule) -> Self {
        let mut out = ProjMorphism::zero(m.clone(), m.clone());
        for (x, k) in m.iter() {
            out.blocks.insert((x, x, ShortPath::Trivial(x)), Matrix::identity(field, k));
        }
        out
    }

    pub fn source(&self) -> &ProjModule {
        &self.source
    }
    pub fn target(&self) -> &ProjModule {
        &self.target
    }

    /// Nonzero blocks keyed by `(target vertex, source vertex, path)`.
    pub fn blocks(&self) -> &BTreeMap<(usize, usize, ShortPath), Matrix<F>> {
        &self.blocks
    }

    pub fn block(&self, y: usize, x: usize, p: ShortPath) -> Option<&Matrix<F>> {
        self.blocks.get(&(y, x, p))
    }

    /// Adds `P[p] (x) m` into the block `(y, x)`.
    pub fn add_block(
        &mut self,
        alg: &RszAlgebra<F>,
        y: usize,
        x: usize,
        p: ShortPath,
        m: Matrix<F>,
    ) -> Result<(), AlgebraError> {
        if !alg.path_runs(p, y, x) {
            return Err(AlgebraError::BadPath {
                path: p,
                from: alg.quiver().vertex(y).to_string(),
                to: alg.quiver().vertex(x).to_string(),
            });
        }
        let want = (self.target.mult(y), self.source.mult(x));
        if m.shape() != want {
            return Err(AlgebraError::ShapeMismatch(format!(
                "block {} <- {} via {} has shape {:?}, expected {:?}",
                alg.quiver().vertex(y),
                alg.quiver().vertex(x),
                alg.path_name(p),
                m.shape(),
                want
            )));
        }
        let key = (y, x, p);
        let sum = match self.blocks.remove(&key) {
            Some(old) => old.add(&m),
            None => m,
        };
        if !sum.is_zero() {
            self.blocks.insert(key, sum);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// No trivial-path components.
    pub fn is_radical(&self) -> bool {
        self.blocks.keys().all(|(_, _, p)| matches!(p, ShortPath::Arrow(_)))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::ShapeMismatch("morphisms between different modules".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (k, m) in &other.blocks {
            let sum = match out.blocks.remove(k) {
                Some(old) => old.add(m),
                None => m.clone(),
            };
            if !sum.is_zero() {
                out.blocks.insert(*k, sum);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = ProjMorphism::zero(self.source.clone(), self.target.clone());
        for (k, m) in &self.blocks {
            let s = m.scale(c);
            if !s.is_zero() {
                out.blocks.insert(*k, s);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for m in out.blocks.values_mut() {
            *m = m.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    /// `g . f`, with `f = self` applied first.
    pub fn then(&self, alg: &RszAlgebra<F>, g: &ProjMorphism<F>) -> Result<Self, AlgebraError> {
        compose(alg, g, self)
    }

    /// Restricts to the given sub-multiplicities: rows/columns kept per vertex (indices into the copies).
    pub fn restrict(
        &self,
        target_keep: &BTreeMap<usize, Vec<usize>>,
        source_keep: &BTreeMap<usize, Vec<usize>>,
    ) -> Self {
        let count = |m: &ProjModule, keep: &BTreeMap<usize, Vec<usize>>| {
            ProjModule::from_pairs(m.iter().map(|(v, k)| (v, keep.get(&v).map_or(k, |l| l.len()))))
        };
        let source = count(&self.source, source_keep);
        let target = count(&self.target, target_keep);
        let mut out = ProjMorphism::zero(source, target);
        for (&(y, x, p), m) in &self.blocks {
            let rows: Vec<usize> = target_keep
                .get(&y)
                .cloned()
                .unwrap_or_else(|| (0..self.target.mult(y)).collect());
            let cols: Vec<usize> = source_keep
                .get(&x)
                .cloned()
                .unwrap_or_else(|| (0..self.source.mult(x)).collect());
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let s = m.select(&rows, &cols);
            if !s.is_zero() {
                out.blocks.insert((y, x, p), s);
            }
        }
        out
    }

    /// Changes the coordinates of one source or target multiplicity space: a target block is
    /// replaced by `g * block`, a source block by `block * g`.
    pub fn transform(&mut self, on_target: bool, v: usize, g: &Matrix<F>) {
        let keys: Vec<_> = self.blocks.keys().copied().collect();
        for k in keys {
            let (y, x, _) = k;
            let hit = if on_target { y == v } else { x == v };
            if !hit {
                continue;
            }
            let m = self.blocks.remove(&k).expect("key");
            let n = if on_target { g.mul(&m) } else { m.mul(g) };
            if !n.is_zero() {
                self.blocks.insert(k, n);
            }
        }
    }

    /// Concrete matrix on the ordered bases of source and target
    /// (per vertex, per basis element of `P[x]`, per copy).
    pub fn realize_matrix(&self, alg: &RszAlgebra<F>) -> Matrix<F> {
        let f = alg.field();
        let src = GlobalBasis::new(alg, &self.source);
        let tgt = GlobalBasis::new(alg, &self.target);
        let mut out = Matrix::zeros(f, tgt.len, src.len);
        for (&(y, x, p), m) in &self.blocks {
            for b in alg.proj_basis(x) {
                let Some(image) = alg.concat(p, b) else { continue };
                for i in 0..m.cols() {
                    for j in 0..m.rows() {
                        let v = m.get(j, i);
                        if f.is_zero(v) {
                            continue;
                        }
                        let r = tgt.index(y, image, j);
                        let c = src.index(x, b, i);
                        let s = f.add(out.get(r, c), v);
                        out.set(r, c, s);
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`ProjMorphism::realize_matrix`]; rejects matrices that are not module maps.
    pub fn from_matrix(
        alg: &RszAlgebra<F>,
        source: &ProjModule,
        target: &ProjModule,
        m: &Matrix<F>,
    ) -> Result<Self, AlgebraError> {
        let f = alg.field();
        let src = GlobalBasis::new(alg, source);
        let tgt = GlobalBasis::new(alg, target);
        if m.shape() != (tgt.len, src.len) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "matrix {:?} for modules of dimensions {} -> {}",
                m.shape(),
                src.len,
                tgt.len
            )));
        }
        let mut out = ProjMorphism::zero(source.clone(), target.clone());
        for (x, kx) in source.iter() {
            for (y, ky) in target.iter() {
                for p in alg.short_paths(y, x) {
                    let image = alg.concat(p, ShortPath::Trivial(x)).expect("trivial");
                    let mut block = Matrix::zeros(f, ky, kx);
                    for i in 0..kx {
                        for j in 0..ky {
                            block.set(j, i, m.get(tgt.index(y, image, j), src.index(x, ShortPath::Trivial(x), i)).clone());
                        }
                    }
                    if !block.is_zero() {
                        out.blocks.insert((y, x, p), block);
                    }
                }
            }
        }
        if &out.realize_matrix(alg) != m {
            return Err(AlgebraError::NotLinear(
                "matrix differs from the module map determined by the generators".into(),
            ));
        }
        Ok(out)
    }

    /// The induced map of representations.
    pub fn realize(&self, alg: &RszAlgebra<F>) -> RepMorphism<F> {
        let f = alg.field();
        let q = alg.quiver();
        let src = RealizedLayout::new(alg, &self.source);
        let tgt = RealizedLayout::new(alg, &self.target);
        let mut maps: Vec<Matrix<F>> = (0..q.vertex_count())
            .map(|z| Matrix::zeros(f, tgt.dims[z], src.dims[z]))
            .collect();
        for (&(y, x, p), m) in &self.blocks {
            for z in 0..q.vertex_count() {
                for b in alg.short_paths(x, z) {
                    let Some(image) = alg.concat(p, b) else { continue };
                    let r0 = tgt.position(z, y, image, 0);
                    let c0 = src.position(z, x, b, 0);
                    maps[z].paste_add(r0, c0, m);
                }
            }
        }
        RepMorphism::new(maps)
    }
}

/// `g . f`.
pub fn compose<F: Field>(
    alg: &RszAlgebra<F>,
    g: &ProjMorphism<F>,
    f: &ProjMorphism<F>,
) -> Result<ProjMorphism<F>, AlgebraError> {
    if f.target != g.source {
        return Err(AlgebraError::ShapeMismatch(
            "target of the first map differs from the source of the second".into(),
        ));
    }
    let mut out = ProjMorphism::zero(f.source.clone(), g.target.clone());
    for (&(b, a, p), fm) in &f.blocks {
        for (&(c, b2, q), gm) in &g.blocks {
            if b2 != b {
                continue;
            }
            // `P[q] . P[p] = P[q then p]`: the short path runs c -> b -> a.
            let Some(path) = alg.concat(q, p) else { continue };
            out.add_block(alg, c, a, path, gm.mul(fm))?;
        }
    }
    Ok(out)
}

/// Ordered basis of a projective as a vector space: vertex, basis element of `P[x]`, copy.
struct GlobalBasis {
    len: usize,
    offsets: BTreeMap<(usize, ShortPath), usize>,
}

impl GlobalBasis {
    fn new<F: Field>(alg: &RszAlgebra<F>, m: &ProjModule) -> Self {
        let mut offsets = BTreeMap::new();
        let mut len = 0;
        for (x, k) in m.iter() {
            for b in alg.proj_basis(x) {
                offsets.insert((x, b), len);
                len += k;
            }
        }
        GlobalBasis { len, offsets }
    }

    fn index(&self, x: usize, b: ShortPath, i: usize) -> usize {
        self.offsets[&(x, b)] + i
    }
}
