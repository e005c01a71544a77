//! Finite windows of the minimal gradable covering of a quiver.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{Quiver, QuiverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("window [{lo}, {hi}] must satisfy lo <= 0 <= hi")]
    BadRange { lo: i64, hi: i64 },
    #[error("trivial translation group: the quiver is gradable, so only power 0 is allowed")]
    TrivialTranslation,
    #[error("({vertex}, {level}) is not a vertex of the window")]
    OutsideWindow { vertex: String, level: i64 },
    #[error("malformed covering label `{0}` (expected `vertex@level`)")]
    BadLabel(String),
}

/// A vertex `(a, n)` of the covering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverVertex {
    pub level: i64,
    pub base: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverArrow {
    pub base_arrow: usize,
    /// Level of the source; the target sits one level higher.
    pub level: i64,
    pub src: usize,
    pub tgt: usize,
}

/// The vertices of the covering component through `(anchor, 0)` whose level lies in `[lo, hi]`,
/// with every covering arrow between them.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    base: Quiver,
    r: u64,
    lo: i64,
    hi: i64,
    anchor: usize,
    offsets: Vec<i64>,
    vertices: Vec<CoverVertex>,
    arrows: Vec<CoverArrow>,
    index: HashMap<CoverVertex, usize>,
    quiver: Quiver,
}

pub fn label(base: &Quiver, v: CoverVertex) -> String {
    format!("{}@{}", base.vertex(v.base), v.level)
}

/// Splits `name@level`.
pub fn parse_label(s: &str) -> Result<(&str, i64), CoverError> {
    let (name, level) = s.rsplit_once('@').ok_or_else(|| CoverError::BadLabel(s.to_string()))?;
    let level = level.parse().map_err(|_| CoverError::BadLabel(s.to_string()))?;
    if name.is_empty() {
        return Err(CoverError::BadLabel(s.to_string()));
    }
    Ok((name, level))
}

impl CoverWindow {
    /// `anchor = None` picks the smallest vertex id.
    pub fn build(q: &Quiver, anchor: Option<&str>, lo: i64, hi: i64) -> Result<Self, CoverError> {
        if lo > 0 || hi < 0 {
            return Err(CoverError::BadRange { lo, hi });
        }
        let r = q.grading_period()?;
        let (pot, _) = q.spanning_potentials()?;
        let anchor = match anchor {
            Some(a) => q.vertex_index(a)?,
            None => (0..q.vertex_count())
                .min_by(|&x, &y| q.vertex(x).cmp(q.vertex(y)))
                .expect("nonempty"),
        };
        let offsets: Vec<i64> = pot.iter().map(|p| p - pot[anchor]).collect();
        let member = |b: usize, n: i64| {
            if r == 0 {
                n == offsets[b]
            } else {
                (n - offsets[b]).rem_euclid(r as i64) == 0
            }
        };
        let mut vertices = Vec::new();
        for n in lo..=hi {
            for b in 0..q.vertex_count() {
                if member(b, n) {
                    vertices.push(CoverVertex { level: n, base: b });
                }
            }
        }
        let index: HashMap<CoverVertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arrows = Vec::new();
        for (si, v) in vertices.iter().enumerate() {
            for a in q.out_arrows(v.base) {
                let t = CoverVertex {
                    level: v.level + 1,
                    base: q.arrow(a).tgt,
                };
                if let Some(&ti) = index.get(&t) {
                    arrows.push(CoverArrow {
                        base_arrow: a,
                        level: v.level,
                        src: si,
                        tgt: ti,
                    });
                }
            }
        }
        let names: Vec<String> = vertices.iter().map(|&v| label(q, v)).collect();
        let arrow_specs = arrows
            .iter()
            .map(|a| {
                (
                    format!("{}@{}", q.arrow(a.base_arrow).id, a.level),
                    names[a.src].clone(),
                    names[a.tgt].clone(),
                )
            })
            .collect();
        let quiver = Quiver::new(names, arrow_specs)?;
        Ok(CoverWindow {
            base: q.clone(),
            r,
            lo,
            hi,
            anchor,
            offsets,
            vertices,
            arrows,
            index,
            quiver,
        })
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }
    pub fn period(&self) -> u64 {
        self.r
    }
    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
    /// Levels whose neighbourhoods are complete inside the window.
    pub fn safe_range(&self) -> (i64, i64) {
        (self.lo + 1, self.hi - 1)
    }
    pub fn anchor(&self) -> usize {
        self.anchor
    }
    pub fn vertices(&self) -> &[CoverVertex] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[CoverArrow] {
        &self.arrows
    }
    /// The window as a finite quiver with vertex ids `a@n` and arrow ids `alpha@n`;
    /// indices agree with [`CoverWindow::vertices`] and [`CoverWindow::arrows`].
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn levels(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.level).collect()
    }

    /// Degree of a walk from the anchor to `b`.
    pub fn walk_offset(&self, b: usize) -> i64 {
        self.offsets[b]
    }

    pub fn contains_vertex(&self, b: usize, n: i64) -> bool {
        if self.r == 0 {
            n == self.offsets[b]
        } else {
            (n - self.offsets[b]).rem_euclid(self.r as i64) == 0
        }
    }

    pub fn index_of(&self, v: CoverVertex) -> Result<usize, CoverError> {
        self.index.get(&v).copied().ok_or_else(|| CoverError::OutsideWindow {
            vertex: self.base.vertex(v.base).to_string(),
            level: v.level,
        })
    }

    pub fn index_of_label(&self, s: &str) -> Result<usize, CoverError> {
        let (name, level) = parse_label(s)?;
        let base = self.base.vertex_index(name)?;
        self.index_of(CoverVertex { level, base })
    }

    pub fn in_range(&self, level: i64) -> bool {
        self.lo <= level && level <= self.hi
    }

    /// Applies the translation `power` times; the flag reports whether the image lies in the window.
    pub fn rho_shift(&self, v: CoverVertex, power: i64) -> Result<(CoverVertex, bool), CoverError> {
        if power == 0 {
            return Ok((v, self.index.contains_key(&v)));
        }
        if self.r == 0 {
            return Err(CoverError::TrivialTranslation);
        }
        let w = CoverVertex {
            level: v.level + power * self.r as i64,
            base: v.base,
        };
        Ok((w, self.index.contains_key(&w)))
    }

    pub fn project(&self, v: CoverVertex) -> Result<usize, CoverError> {
        self.index_of(v)?;
        Ok(v.base)
    }

    /// Window vertices over `b`, by ascending level.
    pub fn fiber(&self, b: usize) -> Vec<CoverVertex> {
        self.vertices.iter().copied().filter(|v| v.base == b).collect()
    }

    pub fn label(&self, i: usize) -> String {
        label(&self.base, self.vertices[i])
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cover {\n  rankdir=LR;\n");
        for i in 0..self.vertices.len() {
            let l = self.label(i);
            let _ = writeln!(out, "  \"{l}\" [label=\"{l}\"];");
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.label(a.src),
                self.label(a.tgt),
                self.base.arrow(a.base_arrow).id
            );
        }
        out.push_str("}\n");
        out
    }
}
