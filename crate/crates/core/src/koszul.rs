//! The Koszul functor from representations of the opposite of a graded quiver to radical
//! complexes of projectives, its extension to bounded complexes, and push-down to the base.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{ProjModule, ProjMorphism, RszAlgebra, ShortPath};
use crate::complex::{assemble, ComplexError, ComplexMorphism, ProjComplex, RealizedComplex};
use crate::cover::{CoverError, CoverVertex, CoverWindow};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{Quiver, QuiverError};
use crate::rep::{injective_at, QuiverRep, RepError, RepMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("the quiver is not gradable; use a covering window")]
    NotGradable,
    #[error("representation is not over the opposite of the graded quiver")]
    WrongQuiver,
    #[error("complex is not of the form F(N)[s]: {0}")]
    NotKoszul(String),
    #[error("translate leaves the window at `{0}`")]
    LeavesWindow(String),
}

/// The top level of the window if covering vertices exist above it.
fn cut_above(cw: &CoverWindow) -> Option<i64> {
    let hi = cw.range().1;
    let more = cw.period() > 0 || (0..cw.base().vertex_count()).any(|b| cw.walk_offset(b) > hi);
    more.then_some(hi)
}

/// A finite quiver with a level function along which every arrow climbs by one.
#[derive(Clone, Debug)]
pub struct GradedQuiver {
    quiver: Arc<Quiver>,
    opposite: Arc<Quiver>,
    levels: Vec<i64>,
    /// Levels above this value are missing from the window.
    cut_above: Option<i64>,
}

impl GradedQuiver {
    pub fn from_window(cw: &CoverWindow) -> Self {
        let quiver = Arc::new(cw.quiver().clone());
        GradedQuiver {
            opposite: Arc::new(quiver.opposite()),
            quiver,
            levels: cw.levels(),
            cut_above: cut_above(cw),
        }
    }

    /// A gradable quiver graded by the potentials of a spanning tree, normalized to start at 0.
    pub fn from_gradable(q: &Quiver) -> Result<Self, KoszulError> {
        let levels = q.grading()?.ok_or(KoszulError::NotGradable)?;
        let quiver = Arc::new(q.clone());
        Ok(GradedQuiver {
            opposite: Arc::new(quiver.opposite()),
            quiver,
            levels,
            cut_above: None,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn opposite(&self) -> &Arc<Quiver> {
        &self.opposite
    }
    pub fn levels(&self) -> &[i64] {
        &self.levels
    }
    pub fn level(&self, v: usize) -> i64 {
        self.levels[v]
    }
    pub fn cut_above(&self) -> Option<i64> {
        self.cut_above
    }

    pub fn algebra<F: Field>(&self, field: F) -> RszAlgebra<F> {
        RszAlgebra::from_arc(self.quiver.clone(), field)
    }

    fn level_range(&self) -> (i64, i64) {
        let lo = *self.levels.iter().min().expect("nonempty quiver");
        let hi = *self.levels.iter().max().expect("nonempty quiver");
        (lo, hi)
    }

    fn vertices_at(&self, level: i64) -> impl Iterator<Item = usize> + '_ {
        (0..self.levels.len()).filter(move |&v| self.levels[v] == level)
    }

    fn check_rep<F: Field>(&self, m: &QuiverRep<F>) -> Result<(), KoszulError> {
        if **m.quiver_arc() != *self.opposite {
            return Err(KoszulError::WrongQuiver);
        }
        Ok(())
    }
}

/// `F(M)^n = (+)_{level x = -n} P[x] (x) M(x)`, with the block of `alpha: y -> x` equal to `M(alpha°)`.
pub fn koszul_rep<F: Field>(g: &GradedQuiver, alg: &RszAlgebra<F>, m: &QuiverRep<F>) -> Result<ProjComplex<F>, KoszulError> {
    g.check_rep(m)?;
    let (lvl_lo, lvl_hi) = g.level_range();
    let (lo, hi) = (-lvl_hi, -lvl_lo);
    let terms: Vec<ProjModule> = (lo..=hi)
        .map(|n| ProjModule::from_pairs(g.vertices_at(-n).map(|x| (x, m.dim(x)))))
        .collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let src = terms[(n - lo) as usize].clone();
        let tgt = terms[(n - lo + 1) as usize].clone();
        let mut d = ProjMorphism::zero(src, tgt);
        for (ai, a) in g.quiver.arrows().iter().enumerate() {
            if g.level(a.tgt) != -n {
                continue;
            }
            let block = m.map(ai).clone();
            if block.rows() == 0 || block.cols() == 0 {
                continue;
            }
            d.add_block(alg, a.src, a.tgt, ShortPath::Arrow(ai), block)
                .map_err(ComplexError::from)?;
        }
        diffs.push(d);
    }
    let truncated = g.cut_above.is_some_and(|cut| g.vertices_at(cut).any(|x| m.dim(x) > 0));
    Ok(ProjComplex::new(alg.clone(), lo, terms, diffs, truncated)?.trimmed())
}

/// `F(f)^n = (+) id (x) f(x)`, laid out against the given images of source and target.
pub fn koszul_morphism<F: Field>(
    g: &GradedQuiver,
    alg: &RszAlgebra<F>,
    f: &RepMorphism<F>,
    source: &ProjComplex<F>,
    target: &ProjComplex<F>,
) -> Result<ComplexMorphism<F>, KoszulError> {
    let lo = source.lo().min(target.lo());
    let hi = source.hi().max(target.hi());
    let mut components = Vec::new();
    for n in lo..=hi {
        let (s, t) = (source.term(n), target.term(n));
        let mut c = ProjMorphism::zero(s.clone(), t.clone());
        for x in g.vertices_at(-n) {
            let block = f.at(x).clone();
            if block.shape() != (t.mult(x), s.mult(x)) {
                return Err(KoszulError::Complex(ComplexError::Shape(format!(
                    "morphism component at vertex {} does not match the complexes",
                    g.quiver.vertex(x)
                ))));
            }
            if block.rows() > 0 && block.cols() > 0 {
                c.add_block(alg, x, x, ShortPath::Trivial(x), block).map_err(ComplexError::from)?;
            }
        }
        components.push(c);
    }
    Ok(ComplexMorphism { lo, components })
}

/// Total complex of the double complex `F(M^i)^j` with vertical signs `(-1)^i`.
pub fn koszul_total<F: Field>(g: &GradedQuiver, alg: &RszAlgebra<F>, mseq: &RealizedComplex<F>) -> Result<ProjComplex<F>, KoszulError> {
    let columns: Vec<ProjComplex<F>> = mseq
        .objects
        .iter()
        .map(|m| koszul_rep(g, alg, m))
        .collect::<Result<_, _>>()?;
    if columns.is_empty() {
        return Ok(ProjComplex::zero(alg.clone()));
    }
    let maps: Vec<ComplexMorphism<F>> = mseq
        .diffs
        .iter()
        .enumerate()
        .map(|(k, d)| koszul_morphism(g, alg, d, &columns[k], &columns[k + 1]))
        .collect::<Result<_, _>>()?;
    let i_lo = mseq.lo;
    let i_of = |k: usize| i_lo + k as i64;
    let lo = columns.iter().enumerate().map(|(k, c)| i_of(k) + c.lo()).min().expect("nonempty");
    let hi = columns.iter().enumerate().map(|(k, c)| i_of(k) + c.hi()).max().expect("nonempty");
    let truncated = columns.iter().any(|c| c.is_truncated());
    let parts_at = |n: i64| -> Vec<ProjModule> { columns.iter().enumerate().map(|(k, c)| c.term(n - i_of(k))).collect() };
    let terms: Vec<ProjModule> = (lo..=hi)
        .map(|n| parts_at(n).iter().fold(ProjModule::new(), |acc, m| acc.direct_sum(m)))
        .collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let sources = parts_at(n);
        let targets = parts_at(n + 1);
        let k_count = columns.len();
        let vertical: Vec<ProjMorphism<F>> = (0..k_count)
            .map(|k| {
                let d = columns[k].diff(n - i_of(k));
                if i_of(k).rem_euclid(2) == 1 {
                    d.neg()
                } else {
                    d
                }
            })
            .collect();
        let horizontal: Vec<ProjMorphism<F>> = (0..k_count.saturating_sub(1))
            .map(|k| maps[k].at(&columns[k], &columns[k + 1], n - i_of(k)))
            .collect();
        let parts: Vec<Vec<Option<&ProjMorphism<F>>>> = (0..k_count)
            .map(|row| {
                (0..k_count)
                    .map(|col| {
                        if row == col {
                            Some(&vertical[col])
                        } else if row == col + 1 {
                            Some(&horizontal[col])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        diffs.push(assemble(alg, &sources, &targets, &parts).map_err(ComplexError::from)?);
    }
    Ok(ProjComplex::new(alg.clone(), lo, terms, diffs, truncated)?.trimmed())
}

/// Same terms, negated differentials, applied `p` times.
pub fn twist<F: Field>(c: &ProjComplex<F>, p: i64) -> ProjComplex<F> {
    // X[1][-1] carries the sign twice, so build the negation directly.
    if p.rem_euclid(2) == 0 {
        return c.clone();
    }
    let diffs = c.diffs().iter().map(|d| d.neg()).collect();
    ProjComplex::new(c.algebra().clone(), c.lo(), c.terms().to_vec(), diffs, c.is_truncated())
        .expect("negated differentials still square to zero")
}

/// The natural isomorphism from the `p`-fold twist of `c` to `c`: `(-1)^{pn}` in degree `n`.
pub fn kappa<F: Field>(c: &ProjComplex<F>, p: i64) -> ComplexMorphism<F> {
    let f = c.algebra().field();
    let components = (c.lo()..=c.hi())
        .map(|n| {
            let id = ProjMorphism::identity(f, &c.term(n));
            if (p * n).rem_euclid(2) == 1 {
                id.neg()
            } else {
                id
            }
        })
        .collect();
    ComplexMorphism { lo: c.lo(), components }
}

fn push_module(cw: &CoverWindow, m: &ProjModule) -> ProjModule {
    ProjModule::from_pairs(m.iter().map(|(v, k)| (cw.vertices()[v].base, k)))
}

/// Offset of each window summand inside the aggregated base summand.
fn push_offsets(cw: &CoverWindow, m: &ProjModule) -> BTreeMap<usize, usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (v, k) in m.iter() {
        let slot = seen.entry(cw.vertices()[v].base).or_insert(0);
        out.insert(v, *slot);
        *slot += k;
    }
    out
}

/// Push-down of a single morphism between window projectives.
pub fn pushdown_map<F: Field>(cw: &CoverWindow, base: &RszAlgebra<F>, d: &ProjMorphism<F>) -> Result<ProjMorphism<F>, KoszulError> {
    let f = base.field();
    let (src, tgt) = (push_module(cw, d.source()), push_module(cw, d.target()));
    let (so, to) = (push_offsets(cw, d.source()), push_offsets(cw, d.target()));
    let mut out = ProjMorphism::zero(src.clone(), tgt.clone());
    for (&(y, x, p), m) in d.blocks() {
        let (by, bx) = (cw.vertices()[y].base, cw.vertices()[x].base);
        let bp = match p {
            ShortPath::Trivial(_) => ShortPath::Trivial(bx),
            ShortPath::Arrow(a) => ShortPath::Arrow(cw.arrows()[a].base_arrow),
        };
        let mut big = Matrix::zeros(f, tgt.mult(by), src.mult(bx));
        big.paste(to[&y], so[&x], m);
        out.add_block(base, by, bx, bp, big).map_err(ComplexError::from)?;
    }
    Ok(out)
}

/// Pushes a complex over the window algebra down to the base: `P[(x, n)] -> P[x]`,
/// `alpha@n -> alpha`, multiplicities aggregated by window vertex order.
pub fn pushdown<F: Field>(cw: &CoverWindow, base: &RszAlgebra<F>, c: &ProjComplex<F>) -> Result<ProjComplex<F>, KoszulError> {
    let terms: Vec<ProjModule> = c.terms().iter().map(|m| push_module(cw, m)).collect();
    let diffs = c.diffs().iter().map(|d| pushdown_map(cw, base, d)).collect::<Result<Vec<_>, _>>()?;
    Ok(ProjComplex::new(base.clone(), c.lo(), terms, diffs, c.is_truncated())?)
}

/// Push-down of a morphism of window complexes.
pub fn pushdown_morphism<F: Field>(
    cw: &CoverWindow,
    base: &RszAlgebra<F>,
    f: &ComplexMorphism<F>,
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
) -> Result<ComplexMorphism<F>, KoszulError> {
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let components = (lo..=hi).map(|n| pushdown_map(cw, base, &f.at(x, y, n))).collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexMorphism { lo, components })
}

/// Recovers `(N, s)` with `c = F(N)[s]` for a support-connected radical complex.
pub fn extract<F: Field>(g: &GradedQuiver, c: &ProjComplex<F>) -> Result<(QuiverRep<F>, i64), KoszulError> {
    if !c.is_radical() {
        return Err(KoszulError::NotKoszul("differential is not radical".into()));
    }
    if c.is_zero() {
        return Err(KoszulError::NotKoszul("zero complex".into()));
    }
    let f = c.algebra().field();
    let mut shift: Option<i64> = None;
    let mut dims = vec![0usize; g.quiver.vertex_count()];
    let mut degree_of = vec![None; g.quiver.vertex_count()];
    for n in c.lo()..=c.hi() {
        for (x, k) in c.term(n).iter() {
            let s = -(g.level(x) + n);
            if *shift.get_or_insert(s) != s {
                return Err(KoszulError::NotKoszul("terms do not sit on a single diagonal".into()));
            }
            dims[x] = k;
            degree_of[x] = Some(n);
        }
    }
    let s = shift.expect("nonzero complex");
    let sign_flip = s.rem_euclid(2) == 1;
    let maps = g
        .opposite
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // The opposite arrow runs x -> y where alpha: y -> x in the graded quiver.
            let (x, y) = (a.src, a.tgt);
            let block = degree_of[x]
                .and_then(|n| c.diff(n).block(y, x, ShortPath::Arrow(ai)).cloned())
                .unwrap_or_else(|| Matrix::zeros(f, dims[y], dims[x]));
            if sign_flip {
                block.neg()
            } else {
                block
            }
        })
        .collect();
    let rep = QuiverRep::from_parts(g.opposite.clone(), f, dims, maps)?;
    Ok((rep, s))
}

/// Moves a window representation up `s` translation steps.
pub fn rho_shift_rep<F: Field>(cw: &CoverWindow, g: &GradedQuiver, m: &QuiverRep<F>, s: i64) -> Result<QuiverRep<F>, KoszulError> {
    g.check_rep(m)?;
    let f = m.field();
    let vmap = translate_vertices(cw, s, |v| m.dim(v) > 0)?;
    let mut dims = vec![0usize; cw.vertices().len()];
    for (&v, &w) in &vmap {
        dims[w] = m.dim(v);
    }
    let mut maps: Vec<Matrix<F>> = g.opposite.arrows().iter().map(|a| Matrix::zeros(f, dims[a.tgt], dims[a.src])).collect();
    for ai in 0..g.opposite.arrow_count() {
        if m.map(ai).rows() == 0 || m.map(ai).cols() == 0 {
            continue;
        }
        maps[translate_arrow(cw, &vmap, ai)?] = m.map(ai).clone();
    }
    Ok(QuiverRep::from_parts(g.opposite.clone(), f, dims, maps)?)
}

fn translate_arrow(cw: &CoverWindow, vmap: &BTreeMap<usize, usize>, a: usize) -> Result<usize, KoszulError> {
    let arr = cw.arrows()[a];
    let q = cw.quiver();
    let moved = (vmap.get(&arr.src), vmap.get(&arr.tgt));
    let (Some(&src), Some(&tgt)) = moved else {
        return Err(KoszulError::LeavesWindow(q.arrow(a).id.clone()));
    };
    q.arrows_between(src, tgt)
        .into_iter()
        .find(|&b| cw.arrows()[b].base_arrow == arr.base_arrow)
        .ok_or_else(|| KoszulError::LeavesWindow(q.arrow(a).id.clone()))
}

fn translate_vertices(cw: &CoverWindow, s: i64, used: impl Fn(usize) -> bool) -> Result<BTreeMap<usize, usize>, KoszulError> {
    let mut out = BTreeMap::new();
    for (i, &v) in cw.vertices().iter().enumerate() {
        if !used(i) {
            continue;
        }
        let (w, inside) = cw.rho_shift(v, s)?;
        if !inside {
            return Err(KoszulError::LeavesWindow(crate::cover::label(cw.base(), w)));
        }
        out.insert(i, cw.index_of(w)?);
    }
    Ok(out)
}

/// Moves a complex over the window algebra by `s` translation steps (relabeling only).
pub fn rho_shift_complex<F: Field>(cw: &CoverWindow, alg: &RszAlgebra<F>, c: &ProjComplex<F>, s: i64) -> Result<ProjComplex<F>, KoszulError> {
    let mut used = std::collections::BTreeSet::new();
    for t in c.terms() {
        used.extend(t.iter().map(|(v, _)| v));
    }
    let vmap = translate_vertices(cw, s, |v| used.contains(&v))?;
    let terms: Vec<ProjModule> = c
        .terms()
        .iter()
        .map(|t| ProjModule::from_pairs(t.iter().map(|(v, k)| (vmap[&v], k))))
        .collect();
    let mut diffs = Vec::new();
    for (i, d) in c.diffs().iter().enumerate() {
        let mut out = ProjMorphism::zero(terms[i].clone(), terms[i + 1].clone());
        for (&(y, x, p), m) in d.blocks() {
            let np = match p {
                ShortPath::Trivial(v) => ShortPath::Trivial(vmap[&v]),
                ShortPath::Arrow(a) => ShortPath::Arrow(translate_arrow(cw, &vmap, a)?),
            };
            out.add_block(alg, vmap[&y], vmap[&x], np, m.clone()).map_err(ComplexError::from)?;
        }
        diffs.push(out);
    }
    Ok(ProjComplex::new(alg.clone(), c.lo(), terms, diffs, c.is_truncated())?)
}

/// Outcome of checking that `F(I_x°)` resolves a simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveImageReport {
    pub vertex: String,
    pub level: i64,
    pub top_degree: Option<i64>,
    pub top_is_single_projective: bool,
    /// Homology of the push-down by degree, over the reliable degrees.
    pub homology: BTreeMap<i64, Vec<usize>>,
    pub expected_simple: Vec<usize>,
    /// Lowest degree that could be checked; lower ones are cut off by the window.
    pub reliable_from: Option<i64>,
    pub pass: bool,
}

impl InjectiveImageReport {
    pub fn is_partial(&self) -> bool {
        self.reliable_from.is_some()
    }
}

pub fn verify_injective_image<F: Field>(cw: &CoverWindow, field: &F, x: CoverVertex) -> Result<InjectiveImageReport, KoszulError> {
    let g = GradedQuiver::from_window(cw);
    let xi = cw.index_of(x)?;
    let walg = g.algebra(field.clone());
    let base = RszAlgebra::new(cw.base().clone(), field.clone());
    let inj = injective_at(g.opposite.clone(), field, xi)?;
    let fc = koszul_rep(&g, &walg, &inj)?;
    let pushed = pushdown(cw, &base, &fc)?;
    let top = pushed.support_range().map(|r| r.1);
    let single = pushed.term(-x.level) == ProjModule::from_pairs([(x.base, 1)]) && top == Some(-x.level);
    let mut expected = vec![0usize; cw.base().vertex_count()];
    expected[x.base] = 1;
    let homology = pushed.homology();
    let mut pass = single;
    for (n, h) in &homology {
        let want = if *n == -x.level { &expected } else { &vec![0; expected.len()] };
        if h != want {
            pass = false;
        }
    }
    if homology.get(&(-x.level)) != Some(&expected) {
        pass = false;
    }
    Ok(InjectiveImageReport {
        vertex: cw.base().vertex(x.base).to_string(),
        level: x.level,
        top_degree: top,
        top_is_single_projective: single,
        homology,
        expected_simple: expected,
        reliable_from: pushed.is_truncated().then(|| pushed.lo() + 1),
        pass,
    })
}
