use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use tilting_core::derived::{
    classical_probe, counit_check, e_membership_in, guaranteed_window, lg, random_suite, unit_check_in, DerivedReport, RandomSpec,
    Window,
};
use tilting_core::homology::ext;
use tilting_core::repmod::{canonical_modules, decompose, end_algebra};
use tilting_core::tiltcore::{equivalence_check, good_tilt_formal, FormalExactSequence};
use tilting_core::{certify_tilting, BoundedComplex, FdModule, TiltingContext, Workspace};

use crate::report::{emit, Output};
use crate::{Command, Common};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn workspace(c: &Common) -> Result<Workspace> {
    let path = c.workspace.as_ref().ok_or_else(|| anyhow!("--workspace is required"))?;
    Workspace::load(path).with_context(|| format!("loading {}", path.display()))
}

fn tilting_name(c: &Common, w: &Workspace) -> String {
    c.tilting
        .clone()
        .or_else(|| w.tilting.as_ref().map(|t| t.module.clone()))
        .unwrap_or_else(|| "T".to_string())
}

fn context(c: &Common, w: &Workspace) -> Result<TiltingContext> {
    let name = tilting_name(c, w);
    let n = c.n.or_else(|| w.tilting.as_ref().filter(|t| t.module == name).map(|t| t.n));
    let n = n.ok_or_else(|| anyhow!("no tilting degree for {name:?}: pass --n"))?;
    Ok(TiltingContext::new(w.module(&name)?, n)?)
}

fn need<'a>(x: &'a Option<String>, flag: &str) -> Result<&'a str> {
    x.as_deref().ok_or_else(|| anyhow!("{flag} is required"))
}

fn window(c: &Common) -> Option<Window> {
    c.window.map(|(lo, hi)| Window::new(lo, hi))
}

fn dims_line(r: &DerivedReport) -> String {
    let cells: Vec<String> = r
        .degrees
        .iter()
        .zip(&r.input_dims)
        .zip(&r.output_dims)
        .zip(&r.verdicts)
        .map(|(((d, a), b), v)| format!("{d}:{a}/{b}{}", if *v { "" } else { "!" }))
        .collect();
    format!("  degree:input/output  {}", cells.join("  "))
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::CheckTilting(c) => check_tilting(&c),
        Command::GoodTilt(c) => good_tilt(&c),
        Command::Ext(c) => ext_cmd(&c),
        Command::Tor(c) => tor_cmd(&c),
        Command::Endo(c) => endo(&c),
        Command::Class(c) => class(&c),
        Command::Miyashita(c) => miyashita(&c),
        Command::Lemma13(c) => lemma13(&c),
        Command::Dagger(c) => dagger(&c),
        Command::DerivedCounit(c) => derived_counit(&c),
        Command::DerivedUnit(c) => derived_unit(&c),
        Command::EMember(c) => e_member(&c),
        Command::ClassicalProbe(c) => probe(&c),
        Command::Equivalence(c) => equivalence(&c),
    }
}

fn check_tilting(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let name = c.module.clone().unwrap_or_else(|| tilting_name(c, &w));
    let n = c
        .n
        .or_else(|| w.tilting.as_ref().filter(|t| t.module == name).map(|t| t.n))
        .ok_or_else(|| anyhow!("--n is required"))?;
    let cert = certify_tilting(w.module(&name)?, n)?;
    let r = &cert.report;
    let mut lines = vec![
        format!("  pd T = {}", r.axioms.t1.pd.map(|p| p.to_string()).unwrap_or_else(|| format!("> {n}"))),
        format!("  Ext^i(T, T) for i in {:?}: {:?}", r.axioms.t2.checked_degrees, r.axioms.t2.ext_dims),
        format!(
            "  add(T)-coresolution of R: {}",
            r.axioms.t3good.coresolution_length.map(|l| format!("length {l}")).unwrap_or_else(|| "none".into())
        ),
    ];
    if let Some(s) = r.s_dim {
        lines.push(format!("  dim End(T) = {s}"));
    }
    lines.extend(r.failures.iter().map(|f| format!("  failure: {f}")));
    Ok(emit("check-tilting", r.verified, to_value(r), c.text, lines))
}

fn good_tilt(c: &Common) -> Result<Output> {
    if c.symbols.is_empty() {
        bail!("--symbols is required");
    }
    let refs: Vec<&str> = c.symbols.iter().map(|s| s.as_str()).collect();
    let g = good_tilt_formal(&FormalExactSequence::from_symbols(&refs))?;
    let mut lines = vec![format!("  T' = {}", g.module)];
    for st in &g.trace {
        lines.push(format!("  {}", st.before));
        lines.push(format!("  = {}", st.after));
    }
    let mut v = to_value(&g);
    v["rendered"] = json!(g.module.to_string());
    v["trace_rendered"] = json!(g.trace.iter().map(|s| s.after.to_string()).collect::<Vec<_>>());
    Ok(emit("good-tilt", true, v, c.text, lines))
}

fn ext_cmd(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let target = need(&c.module, "--module")?;
    let source = c.other.clone().unwrap_or_else(|| tilting_name(c, &w));
    let i = c.degree.ok_or_else(|| anyhow!("--degree is required"))?;
    let e = ext(w.module(&source)?, w.module(target)?, i)?;
    let lines = vec![format!("  dim Ext^{i}({source}, {target}) = {}", e.dim)];
    Ok(emit("ext", true, json!({"source": source, "target": target, "degree": i, "dim": e.dim}), c.text, lines))
}

fn tor_cmd(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let name = need(&c.smodule, "--smodule")?;
    let nmod = w.smodule(&ctx, name)?;
    let i = c.degree.ok_or_else(|| anyhow!("--degree is required"))?;
    let t = ctx.tor_module(&nmod, i)?;
    let parts: Vec<usize> = decompose(&t)?.iter().map(|(m, k)| m.dim() * k).collect();
    let lines = vec![format!("  dim Tor_{i}({name}, T) = {}", t.dim())];
    Ok(emit("tor", true, json!({"smodule": name, "degree": i, "dim": t.dim(), "summand_dims": parts}), c.text, lines))
}

fn endo(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let name = c.module.clone().unwrap_or_else(|| tilting_name(c, &w));
    let m = w.module(&name)?;
    let e = end_algebra(m)?;
    let rad = e.algebra.radical()?.dim();
    let summands: Vec<Value> = decompose(m)?.iter().map(|(x, k)| json!({"dim": x.dim(), "multiplicity": k})).collect();
    let lines = vec![
        format!("  dim End({name}) = {}", e.algebra.dim()),
        format!("  dim rad End({name}) = {rad}"),
        format!("  indecomposable summands: {}", summands.len()),
    ];
    Ok(emit("endo", true, json!({"module": name, "dim": e.algebra.dim(), "radical_dim": rad, "summands": summands}), c.text, lines))
}

fn class(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let r = match (&c.module, &c.smodule) {
        (Some(m), None) => ctx.ke_index(w.module(m)?)?,
        (None, Some(s)) => ctx.kt_index(&w.smodule(&ctx, s)?)?,
        _ => bail!("exactly one of --module and --smodule is required"),
    };
    let lines = vec![
        format!("  {:?} index: {}", r.kind, r.index.map(|i| i.to_string()).unwrap_or_else(|| "none".into())),
        format!("  witness dims: {:?}", r.witness_dims),
    ];
    Ok(emit("class", true, to_value(&r), c.text, lines))
}

fn miyashita(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let r = match (&c.module, &c.smodule) {
        (Some(m), None) => ctx.miyashita_roundtrip(w.module(m)?)?,
        (None, Some(s)) => ctx.miyashita_roundtrip_dual(&w.smodule(&ctx, s)?)?,
        _ => bail!("exactly one of --module and --smodule is required"),
    };
    let mut lines = vec![
        format!("  side      index  dim(input)  dim(image)  dim(roundtrip)  isomorphic"),
        format!(
            "  {:<8}  {:<5}  {:<10}  {:<10}  {:<14}  {}",
            format!("{:?}", r.kind),
            r.index,
            r.input_dim,
            r.image_dim,
            r.roundtrip_dim,
            r.isomorphic
        ),
        format!("  image witness dims: {:?}", r.image_class.witness_dims),
    ];
    lines.extend(r.failures.iter().map(|f| format!("  failure: {f}")));
    Ok(emit("miyashita", r.verified, to_value(&r), c.text, lines))
}

fn lemma13(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let m = w.module(need(&c.module, "--module")?)?;
    let p = match &c.smodule {
        Some(s) => w.smodule(&ctx, s)?,
        None => ctx.s.regular_module(),
    };
    let r = ctx.lemma13_check(m, &p)?;
    Ok(emit("lemma13", r.verified, to_value(&r), c.text, vec![]))
}

fn dagger(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let r = &ctx.dagger.report;
    let ok = r.exact && r.projective_terms && r.double_end_ok && r.length <= ctx.n;
    Ok(emit("dagger", ok, to_value(r), c.text, vec![]))
}

fn r_suite(c: &Common, w: &Workspace, ctx: &TiltingContext) -> Result<Vec<(String, BoundedComplex)>> {
    if let Some(name) = &c.complex {
        return Ok(vec![(name.clone(), w.complex(name)?.clone())]);
    }
    if let Some(name) = &c.module {
        return Ok(vec![(name.clone(), BoundedComplex::stalk(w.module(name)?, 0))]);
    }
    let mut out = Vec::new();
    let cm = canonical_modules(&ctx.algebra)?;
    let named = [("S", &cm.simples), ("P", &cm.projectives), ("I", &cm.injectives)];
    for (tag, mods) in named {
        for (v, m) in mods.iter().enumerate() {
            out.push((format!("{tag}{v} stalk"), BoundedComplex::stalk(m, 0)));
        }
    }
    for (k, x) in random_suite(&ctx.algebra, &RandomSpec::default(), c.seed, c.count)?.into_iter().enumerate() {
        out.push((format!("random seed {}", c.seed + k as u64), x));
    }
    Ok(out)
}

fn s_suite(c: &Common, w: &Workspace, ctx: &TiltingContext) -> Result<Vec<(String, BoundedComplex)>> {
    if let Some(name) = &c.complex {
        return Ok(vec![(name.clone(), w.scomplex(ctx, name)?)]);
    }
    if let Some(name) = &c.smodule {
        return Ok(vec![(name.clone(), BoundedComplex::stalk(&w.smodule(ctx, name)?, 0))]);
    }
    let mut out = Vec::new();
    for name in w.scomplex_names() {
        out.push((name.clone(), w.scomplex(ctx, &name)?));
    }
    for (v, m) in canonical_modules(&ctx.s)?.simples.iter().enumerate() {
        out.push((format!("S-simple {v} stalk"), BoundedComplex::stalk(m, 0)));
    }
    for (k, x) in random_suite(&ctx.s, &RandomSpec::default(), c.seed, c.count)?.into_iter().enumerate() {
        out.push((format!("random seed {}", c.seed + k as u64), x));
    }
    Ok(out)
}

fn suite_output(command: &str, c: &Common, rows: Vec<(String, DerivedReport)>) -> Output {
    let verified = rows.iter().all(|(_, r)| r.verified);
    let mut lines = Vec::new();
    for (name, r) in &rows {
        lines.push(format!("  {name}: {}", if r.verified { "pass" } else { "FAIL" }));
        lines.push(format!("  {}", dims_line(r)));
    }
    let v: Vec<Value> = rows.iter().map(|(name, r)| json!({"name": name, "report": r})).collect();
    emit(command, verified, json!({"seed": c.seed, "checks": v}), c.text, lines)
}

fn derived_counit(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let mut rows = Vec::new();
    for (name, x) in r_suite(c, &w, &ctx)? {
        rows.push((name, counit_check(&ctx, &x)?.with_seed(c.seed)));
    }
    Ok(suite_output("derived-counit", c, rows))
}

fn derived_unit(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let mut rows = Vec::new();
    for (name, x) in s_suite(c, &w, &ctx)? {
        rows.push((name, unit_check_in(&ctx, &x, window(c))?.with_seed(c.seed)));
    }
    Ok(suite_output("derived-unit", c, rows))
}

fn e_member(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let (name, x) = s_suite(c, &w, &ctx)?
        .into_iter()
        .next()
        .filter(|_| c.complex.is_some() || c.smodule.is_some())
        .ok_or_else(|| anyhow!("--complex or --smodule is required"))?;
    let in_e = e_membership_in(&ctx, &x, window(c))?;
    let has_homology = !x.is_exact();
    let l = lg(&ctx, &x, window(c))?;
    let dims: Vec<(i32, usize)> = l.homology_dims();
    let w_used = window(c).unwrap_or_else(|| guaranteed_window(&ctx, &x));
    // a certified T is classical, so E = 0: membership must match exactness
    let consistent = in_e != has_homology;
    let lines = vec![
        format!("  {name} in E: {in_e}"),
        format!("  homology of LG: {dims:?}"),
    ];
    Ok(emit(
        "e-member",
        consistent,
        json!({"name": name, "in_e": in_e, "has_homology": has_homology, "lg_homology": dims, "window": w_used}),
        c.text,
        lines,
    ))
}

fn probe(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let suite = s_suite(c, &w, &ctx)?;
    let names: Vec<String> = suite.iter().map(|(n, _)| n.clone()).collect();
    let set: Vec<BoundedComplex> = suite.into_iter().map(|(_, x)| x).collect();
    let r = classical_probe(&ctx, &set)?;
    let lines: Vec<String> = r
        .entries
        .iter()
        .map(|e| format!("  {}: in E {}, unit {}", names[e.index], e.in_e, if e.unit.verified { "pass" } else { "FAIL" }))
        .collect();
    let mut v = to_value(&r);
    v["names"] = json!(names);
    v["seed"] = json!(c.seed);
    Ok(emit("classical-probe", r.verified, v, c.text, lines))
}

fn equivalence(c: &Common) -> Result<Output> {
    let w = workspace(c)?;
    let ctx = context(c, &w)?;
    let other = need(&c.other, "--other")?;
    let n2 = c.n.unwrap_or(ctx.n);
    let ctx2 = TiltingContext::new(w.module(other)?, n2)?;
    let tests: Vec<FdModule> = w.modules.values().cloned().collect();
    let r = equivalence_check(&ctx, &ctx2, &tests)?;
    let lines = vec![
        format!("  equivalent: {}", r.equivalent),
        format!("  modules tested: {}", r.tested),
    ]
    .into_iter()
    .chain(r.failures.iter().map(|f| format!("  failure: {f}")))
    .collect();
    Ok(emit("equivalence", r.equivalent, to_value(&r), c.text, lines))
}
