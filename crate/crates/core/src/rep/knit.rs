//! Knitting the preinjective component of a finite acyclic quiver from its injectives.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{ar_sequence_ending_at, injective_at, is_isomorphic, projective_at, QuiverRep, RepError};
use crate::arwindow::{ArVertex, ArWindow, VertexFlags};
use crate::field::Field;
use crate::quiver::Quiver;

/// A knitted fragment with the representation behind every vertex.
#[derive(Clone, Debug)]
pub struct Knitted<F: Field> {
    pub window: ArWindow,
    pub reps: Vec<QuiverRep<F>>,
    /// Every vertex was processed within the step budget.
    pub complete: bool,
}

fn dims_label(d: &[usize]) -> String {
    format!("[{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Knits leftwards from injective seeds. Predecessors of a vertex are the translates of its
/// successors together with the injectives mapping onto it, so a vertex is expanded once all
/// of its successors are. Each translate computed costs one step.
pub fn knit_component<F: Field>(
    q: Arc<Quiver>,
    field: &F,
    seeds: Vec<QuiverRep<F>>,
    steps: usize,
) -> Result<Knitted<F>, RepError> {
    let injectives: Vec<QuiverRep<F>> = (0..q.vertex_count())
        .map(|a| injective_at(q.clone(), field, a))
        .collect::<Result<_, _>>()?;
    let projectives: Vec<QuiverRep<F>> = (0..q.vertex_count())
        .map(|a| projective_at(q.clone(), field, a))
        .collect::<Result<_, _>>()?;
    let find_in = |list: &[QuiverRep<F>], m: &QuiverRep<F>| -> Result<Option<usize>, RepError> {
        for (i, x) in list.iter().enumerate() {
            if is_isomorphic(x, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };

    let mut reps: Vec<QuiverRep<F>> = Vec::new();
    let mut injective_of: BTreeMap<usize, usize> = BTreeMap::new();
    for s in seeds {
        let a = find_in(&injectives, &s)?.ok_or(RepError::NotApplicable)?;
        if injective_of.values().any(|&b| b == a) {
            continue;
        }
        injective_of.insert(reps.len(), a);
        reps.push(s);
    }
    let mut arrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&i, &a) in &injective_of {
        for (&j, &b) in &injective_of {
            // I_a -> I_b once per arrow b -> a.
            let mult = q.arrows_between(b, a).len();
            if mult > 0 {
                arrows.insert((i, j), mult);
            }
        }
    }

    let mut tau: BTreeMap<usize, usize> = BTreeMap::new();
    let mut processed: BTreeSet<usize> = BTreeSet::new();
    let mut projective: BTreeSet<usize> = BTreeSet::new();
    let mut used = 0usize;
    loop {
        let ready = (0..reps.len()).find(|&z| {
            !processed.contains(&z)
                && arrows
                    .keys()
                    .filter(|&&(from, _)| from == z)
                    .all(|&(_, to)| processed.contains(&to))
        });
        let Some(z) = ready else { break };
        let seq = match ar_sequence_ending_at(&reps[z]) {
            Ok(seq) => seq,
            Err(RepError::NotApplicable) => {
                projective.insert(z);
                processed.insert(z);
                continue;
            }
            Err(e) => return Err(e),
        };
        if used == steps {
            break;
        }
        used += 1;
        let preds: Vec<(usize, usize)> = arrows
            .iter()
            .filter(|(&(_, to), _)| to == z)
            .map(|(&(from, _), &m)| (from, m))
            .collect();
        let mut middle = vec![0usize; q.vertex_count()];
        for &(y, m) in &preds {
            for (acc, d) in middle.iter_mut().zip(reps[y].dims()) {
                *acc += m * d;
            }
        }
        if middle != seq.middle.dims() {
            return Err(RepError::Internal(format!(
                "mesh ending at {} has middle {:?} but the almost split sequence gives {:?}",
                dims_label(reps[z].dims()),
                middle,
                seq.middle.dims()
            )));
        }
        let left = seq.left;
        let tz = match find_in(&reps, &left)? {
            Some(t) => t,
            None => {
                reps.push(left);
                reps.len() - 1
            }
        };
        tau.insert(z, tz);
        for (y, m) in preds {
            *arrows.entry((tz, y)).or_insert(0) += m;
        }
        processed.insert(z);
    }

    let mut window = ArWindow::new();
    let mut seen_labels: BTreeMap<String, usize> = BTreeMap::new();
    for (i, m) in reps.iter().enumerate() {
        let base = dims_label(m.dims());
        let k = seen_labels.entry(base.clone()).or_insert(0);
        let id = if *k == 0 { base } else { format!("{base}#{k}") };
        *k += 1;
        let is_proj = projective.contains(&i) || find_in(&projectives, m)?.is_some();
        window.add_vertex(ArVertex::new(id).with_dims(m.dims().to_vec()).with_flags(VertexFlags {
            projective: is_proj,
            injective: injective_of.contains_key(&i),
            perfect: true,
            simple_complex: false,
        }));
    }
    let internal = |e: crate::arwindow::ArWindowError| RepError::Internal(e.to_string());
    for (&(a, b), &m) in &arrows {
        window.add_arrow(a, b, m).map_err(internal)?;
    }
    for (&z, &t) in &tau {
        window.set_tau(z, t).map_err(internal)?;
    }
    let mut complete = true;
    for i in 0..reps.len() {
        if !processed.contains(&i) {
            window.mark_frontier(i);
            complete = false;
        }
    }
    Ok(Knitted { window, reps, complete })
}

/// All injectives of `q` as seeds.
pub fn knit_preinjective<F: Field>(q: Arc<Quiver>, field: &F, steps: usize) -> Result<Knitted<F>, RepError> {
    let seeds = (0..q.vertex_count())
        .map(|a| injective_at(q.clone(), field, a))
        .collect::<Result<Vec<_>, _>>()?;
    knit_component(q, field, seeds, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arwindow::{shape_report, ShapeTag};
    use crate::cover::CoverWindow;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::fixtures::*;

    #[test]
    fn a3_full_ar_quiver() {
        let k = knit_preinjective(Arc::new(a3()), &Rationals, 20).unwrap();
        assert!(k.complete);
        assert_eq!(k.window.len(), 6);
        assert!(k.window.mesh_violations().is_empty());
        assert_eq!(k.window.checked_meshes(), 3);
        let projectives = k.window.vertices().iter().filter(|v| v.flags.projective).count();
        assert_eq!(projectives, 3);
        let s = k.window.find_section().unwrap().unwrap();
        assert!(s.vertices.iter().all(|&v| k.window.vertex(v).flags.injective));
        assert_eq!(s.label(), "A3");
        assert_eq!(shape_report(&k.window).tag, ShapeTag::ZDelta("A3".into()));
    }

    #[test]
    fn a2_three_vertices() {
        let k = knit_preinjective(Arc::new(a2()), &Rationals, 10).unwrap();
        assert_eq!(k.window.len(), 3);
        assert_eq!(k.window.checked_meshes(), 1);
    }

    #[test]
    fn kronecker_budget_runs_out() {
        let f = PrimeField::new(101).unwrap();
        let k = knit_preinjective(Arc::new(kronecker()), &f, 4).unwrap();
        assert!(!k.complete);
        assert!(!k.window.frontier().is_empty());
        assert!(k.window.mesh_violations().is_empty());
        // Preinjective dimension vectors of the Kronecker quiver: (n+1, n).
        let dims: Vec<Vec<usize>> = k.reps.iter().map(|r| r.dims().to_vec()).collect();
        for d in [vec![1, 0], vec![2, 1], vec![3, 2], vec![4, 3], vec![5, 4]] {
            assert!(dims.contains(&d), "{dims:?}");
        }
        assert!(matches!(shape_report(&k.window).tag, ShapeTag::NMinusDelta(_)));
    }

    #[test]
    fn loop_covering_window_is_linear() {
        let cw = CoverWindow::build(&loop1(), None, 0, 3).unwrap();
        let q = Arc::new(cw.quiver().opposite());
        let k = knit_preinjective(q, &Rationals, 50).unwrap();
        assert!(k.complete);
        assert_eq!(k.window.len(), 10);
        assert!(k.window.mesh_violations().is_empty());
        assert_eq!(k.window.checked_meshes(), 6);
    }

    #[test]
    fn seeds_must_be_injective() {
        let q = Arc::new(a2());
        let p = projective_at(q.clone(), &Rationals, 1).unwrap();
        assert_eq!(knit_component(q, &Rationals, vec![p], 3).unwrap_err(), RepError::NotApplicable);
    }
}
