use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsq_core::algebra::{ProjModule, RszAlgebra};
use rsq_core::arwindow::shape_report;
use rsq_core::complex::{hom_homotopy, ProjComplex};
use rsq_core::cover::{parse_label, CoverWindow};
use rsq_core::derived::{classify_components, irreducible_to_simples, locate_simple, DerivedError};
use rsq_core::field::{Field, FieldSpec};
use rsq_core::koszul::{koszul_rep, pushdown, GradedQuiver};
use rsq_core::quiver::Quiver;
use rsq_core::rep::{knit_preinjective, QuiverRep};
use rsq_core::sample::{contractible, random_radical_complex, scramble};
use serde_json::Value;

use crate::io::{infer_quiver, malformed, pretty, read_json, write_text};

/// Inclusive level range `LO..HI` with `LO <= 0 <= HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl std::str::FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in `{s}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in `{s}`"))?;
        if lo > 0 || hi < 0 {
            return Err(format!("window {lo}..{hi} must contain level 0"));
        }
        Ok(Window { lo, hi })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dims_of(q: &Quiver, d: &[usize]) -> String {
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(v, k)| format!("{}:{k}", q.vertex(v)))
        .collect();
    format!("({})", parts.join(", "))
}

fn module_of(q: &Quiver, m: &ProjModule) -> String {
    if m.is_zero() {
        return "0".into();
    }
    m.iter()
        .map(|(v, k)| if k == 1 { format!("P[{}]", q.vertex(v)) } else { format!("P[{}]^{k}", q.vertex(v)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn describe_complex<F: Field>(out: &mut String, c: &ProjComplex<F>) {
    let q = c.algebra().quiver();
    match c.support_range() {
        None => out.push_str("  0\n"),
        Some((lo, hi)) => {
            for n in lo..=hi {
                let _ = writeln!(out, "  degree {n}: {}", module_of(q, &c.term(n)));
            }
        }
    }
    if c.is_truncated() {
        out.push_str("  (continues below the lowest degree)\n");
    }
}

pub fn analyze(out: &mut String, q: &Quiver) -> Result<()> {
    let r = q.grading_period()?;
    let shape = q.classify_shape()?;
    let _ = writeln!(out, "gradable: {}, r_Q: {r}, shape: {shape}", yes_no(r == 0));
    let _ = writeln!(out, "vertices: {}, arrows: {}", q.vertex_count(), q.arrow_count());
    let paths = q.infinite_path_profile();
    let _ = writeln!(
        out,
        "oriented cycle: {}, right infinite paths: {}, left infinite paths: {}",
        yes_no(q.has_oriented_cycle()),
        yes_no(paths.has_right_infinite),
        yes_no(paths.has_left_infinite)
    );
    Ok(())
}

pub fn cover(out: &mut String, q: &Quiver, w: Window, anchor: Option<&str>, dot: Option<&Path>) -> Result<()> {
    let cw = CoverWindow::build(q, anchor, w.lo, w.hi)?;
    match dot {
        Some(path) => {
            write_text(path, &cw.to_dot())?;
            let _ = writeln!(
                out,
                "window {}..{}, anchor {}, r_Q: {}, vertices: {}, arrows: {}",
                w.lo,
                w.hi,
                q.vertex(cw.anchor()),
                cw.period(),
                cw.vertices().len(),
                cw.arrows().len()
            );
            let _ = writeln!(out, "wrote {}", path.display());
        }
        None => out.push_str(&cw.to_dot()),
    }
    Ok(())
}

pub struct KoszulArgs<'a> {
    pub rep: &'a Path,
    pub pushdown: bool,
    pub depth: i64,
    pub anchor: Option<&'a str>,
    pub output: Option<&'a Path>,
}

/// The window spans the levels named in the representation file and `depth` more above.
pub fn koszul<F: Field>(out: &mut String, field: &F, q: &Quiver, args: KoszulArgs<'_>) -> Result<()> {
    let v = read_json(args.rep)?;
    let dims = v
        .get("dims")
        .and_then(Value::as_object)
        .ok_or_else(|| malformed(args.rep, "representation needs a `dims` object"))?;
    let mut lo = 0i64;
    let mut hi = 0i64;
    for key in dims.keys() {
        let (_, level) = parse_label(key).map_err(|e| malformed(args.rep, e))?;
        lo = lo.min(level);
        hi = hi.max(level);
    }
    let cw = CoverWindow::build(q, args.anchor, lo, hi + args.depth)?;
    let g = GradedQuiver::from_window(&cw);
    let m = QuiverRep::from_json(g.opposite().clone(), field, &v).map_err(|e| malformed(args.rep, e))?;
    let walg = g.algebra(field.clone());
    let image = koszul_rep(&g, &walg, &m)?;
    let json = if args.pushdown {
        let base = RszAlgebra::new(q.clone(), field.clone());
        let c = pushdown(&cw, &base, &image)?;
        let _ = writeln!(out, "push-down of F(M) over {}:", field.spec());
        describe_complex(out, &c);
        c.to_json()
    } else {
        let _ = writeln!(out, "F(M) over the window {}..{}:", cw.range().0, cw.range().1);
        describe_complex(out, &image);
        image.to_json()
    };
    match args.output {
        Some(path) => {
            write_text(path, &pretty(&json))?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
        None => out.push_str(&pretty(&json)),
    }
    Ok(())
}

/// Field precedence: the command line, then the file, then the default prime field.
pub fn field_for(flag: Option<FieldSpec>, files: &[(&Path, &Value)]) -> Result<FieldSpec> {
    if let Some(f) = flag {
        return Ok(f);
    }
    let mut found: Option<FieldSpec> = None;
    for (path, v) in files {
        if let Some(f) = ProjComplex::<rsq_core::field::Rationals>::field_of_json(v).map_err(|e| malformed(path, e))? {
            if found.is_some_and(|g| g != f) {
                bail!("complex files disagree on the field; pass --field");
            }
            found = Some(f);
        }
    }
    Ok(found.unwrap_or_default())
}

pub fn complex_quiver(quiver: Option<&Quiver>, path: &Path, v: &Value) -> Result<Quiver> {
    match quiver {
        Some(q) => Ok(q.clone()),
        None => infer_quiver(path, v),
    }
}

pub fn load_complex<F: Field>(field: &F, q: &Quiver, path: &Path, v: &Value) -> Result<ProjComplex<F>> {
    let alg = RszAlgebra::new(q.clone(), field.clone());
    ProjComplex::from_json(alg, v).map_err(|e| malformed(path, e))
}

pub fn decompose<F: Field>(out: &mut String, c: &ProjComplex<F>, path: &Path, radicalize: bool, out_dir: Option<&Path>) -> Result<()> {
    let c = if radicalize { c.radicalize() } else { c.clone() };
    let parts = c.decompose_by_support();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("complex");
    let dir: PathBuf = match out_dir {
        Some(d) => d.to_path_buf(),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let _ = writeln!(out, "summands: {}", parts.len());
    for (i, p) in parts.iter().enumerate() {
        let file = dir.join(format!("{stem}.{i}.json"));
        write_text(&file, &pretty(&p.to_json()))?;
        let range = p.support_range().map_or("empty".to_string(), |(a, b)| format!("degrees {a}..{b}"));
        let _ = writeln!(out, "{}: {range}", file.display());
    }
    Ok(())
}

pub fn homology<F: Field>(out: &mut String, c: &ProjComplex<F>) -> Result<()> {
    let q = c.algebra().quiver();
    let h = c.homology();
    if c.is_truncated() {
        let _ = writeln!(out, "degree {} and below: not determined (truncated)", c.lo());
    }
    if h.is_empty() {
        out.push_str("acyclic\n");
    }
    for (n, d) in h {
        let _ = writeln!(out, "H^{n}: {}", dims_of(q, &d));
    }
    Ok(())
}

pub fn hom<F: Field>(out: &mut String, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<()> {
    let h = hom_homotopy(x, y)?;
    let _ = writeln!(out, "dim Hom_K: {}", h.dim);
    Ok(())
}

pub fn knit<F: Field>(out: &mut String, field: &F, q: &Quiver, w: Window, anchor: Option<&str>, steps: usize, dot: Option<&Path>) -> Result<()> {
    let cw = CoverWindow::build(q, anchor, w.lo, w.hi)?;
    // Representations of the window live on its opposite, as for the Koszul functor.
    let op = Arc::new(cw.quiver().opposite());
    let k = knit_preinjective(op, field, steps)?;
    let report = shape_report(&k.window);
    let _ = writeln!(
        out,
        "vertices: {}, meshes checked: {}, mesh violations: {}, complete: {}",
        k.window.len(),
        k.window.checked_meshes(),
        k.window.mesh_violations().len(),
        yes_no(k.complete)
    );
    let _ = writeln!(out, "shape: {}", report.tag);
    for e in &report.evidence {
        let _ = writeln!(out, "  {e}");
    }
    if let Some(path) = dot {
        write_text(path, &k.window.to_dot())?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(())
}

pub fn simples<F: Field>(out: &mut String, field: &F, q: &Quiver, vertex: &str, shift: i64, depth: i64) -> Result<()> {
    let a = q.vertex_index(vertex)?;
    let (x, s) = locate_simple(q, a, shift)?;
    let _ = writeln!(
        out,
        "S[{vertex}][{shift}] = F_pi(I_x°)[s] with x = {}@{}, s = {s}",
        q.vertex(x.base),
        x.level
    );
    match irreducible_to_simples(q, field, a, depth) {
        Ok(r) => {
            let targets: Vec<String> = r.target_vertices.iter().map(|t| format!("S[{t}][1]")).collect();
            let _ = writeln!(out, "map: S[{vertex}] -> {}", targets.join(" + "));
            let _ = writeln!(out, "nonzero components in degrees: {:?}", r.nonzero_degrees);
            let _ = writeln!(out, "dim Hom_K: {}, composites through window: {}", r.hom_dim, r.composites_dim);
            let _ = writeln!(
                out,
                "nonzero: {}, irreducible within simples of shift {}..{}: {}",
                yes_no(r.nonzero),
                r.window.0,
                r.window.1,
                yes_no(r.irreducible_in_window)
            );
            Ok(())
        }
        Err(DerivedError::NoOutgoing(v)) => bail!("vertex `{v}` has no outgoing arrows, so S[{v}] has no irreducible map to shifted simples"),
        Err(e) => Err(e.into()),
    }
}

pub fn classify<F: Field>(out: &mut String, field: &F, q: &Quiver, evidence: bool, steps: usize, dot_dir: Option<&Path>) -> Result<()> {
    let report = classify_components(q)?;
    out.push_str(&report.table());
    if !evidence {
        return Ok(());
    }
    let width = 3i64;
    let cw = CoverWindow::build(q, None, 0, width)?;
    let op = Arc::new(cw.quiver().opposite());
    let k = knit_preinjective(op, field, steps)?;
    let shape = shape_report(&k.window);
    let _ = writeln!(
        out,
        "evidence: covering window 0..{width}: {} vertices, {} meshes checked, {} violations, shape {}",
        k.window.len(),
        k.window.checked_meshes(),
        k.window.mesh_violations().len(),
        shape.tag
    );
    if let Some(dir) = dot_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (i, comp) in k.window.components().iter().enumerate() {
            let path = dir.join(format!("component-{i}.dot"));
            let mut sub = rsq_core::arwindow::ArWindow::new();
            let mut index = std::collections::BTreeMap::new();
            for &v in comp {
                index.insert(v, sub.add_vertex(k.window.vertex(v).clone()));
            }
            for (a, b, m) in k.window.arrows() {
                if let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) {
                    sub.add_arrow(x, y, m)?;
                }
            }
            for &v in comp {
                if let Some(t) = k.window.tau(v).and_then(|t| index.get(&t)) {
                    sub.set_tau(index[&v], *t)?;
                }
                if k.window.is_frontier(v) {
                    sub.mark_frontier(index[&v]);
                }
            }
            write_text(&path, &sub.to_dot())?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(())
}

/// Randomized consistency checks; every generated input derives from `seed`.
pub fn selfcheck<F: Field>(out: &mut String, field: &F, seed: u64, count: usize) -> Result<bool> {
    use rsq_core::quiver::fixtures::{a3, cycle, loop1};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let _ = writeln!(out, "seed: {seed}, field: {}", field.spec());
    let mut all = true;
    for (name, q) in [("A3", a3()), ("3-cycle", cycle(3)), ("loop", loop1())] {
        let alg = RszAlgebra::new(q.clone(), field.clone());
        let mut failures = Vec::new();
        for i in 0..count {
            let c = random_radical_complex(&q, field, 2, 0, &mut rng)?;
            let c2 = random_radical_complex(&q, field, 1, 1, &mut rng)?;
            let c = c.direct_sum(&c2)?;
            let parts = c.decompose_by_support();
            let mut sum = ProjComplex::zero(alg.clone());
            for p in &parts {
                sum = sum.direct_sum(p)?;
            }
            if sum.trimmed() != c.clone().trimmed() {
                failures.push(format!("#{i}: summands do not re-sum to the input"));
            }
            let v = rand::Rng::gen_range(&mut rng, 0..q.vertex_count());
            let n = rand::Rng::gen_range(&mut rng, -2..=1);
            let padded = scramble(&c.direct_sum(&contractible(&alg, ProjModule::from_pairs([(v, 1)]), n))?, &mut rng)?;
            let r = padded.radicalize();
            if !r.is_radical() || r.radicalize() != r || r.homology() != c.homology() {
                failures.push(format!("#{i}: radicalization changed the complex"));
            }
        }
        let ok = failures.is_empty();
        all &= ok;
        let _ = writeln!(out, "{}: {name}: {count} complexes", if ok { "PASS" } else { "FAIL" });
        for f in failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    Ok(all)
}
