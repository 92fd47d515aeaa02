//! Acceptance criteria: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its limit. Run with `--nocapture` to see the table
//! when everything passes.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use tilting_core::derived::{
    classical_probe, counit_check, e_membership, is_algebra_isomorphism, lg, random_suite, regular_end_isomorphism, rh, unit_check,
    RandomSpec,
};
use tilting_core::repmod::{canonical_modules, is_isomorphic};
use tilting_core::tiltcore::{good_tilt_formal, FormalExactSequence};
use tilting_core::{certify_tilting, BoundedComplex, FdModule, Matrix, TiltingContext, Workspace};

fn fixture(name: &str) -> Workspace {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    Workspace::load(p).unwrap()
}

fn context(ws: &Workspace) -> TiltingContext {
    ws.context(None, None).unwrap()
}

fn iso(a: &FdModule, b: &FdModule) -> bool {
    a.dim() == b.dim() && (a.dim() == 0 || is_isomorphic(a, b).unwrap().is_some())
}

fn stalk(m: &FdModule) -> BoundedComplex {
    BoundedComplex::stalk(m, 0)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(id: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let ok = out.ok && elapsed < limit;
    println!(
        "criterion {id:>2}: {} ({:.3}s, limit {}s) {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64(),
        out.detail
    );
    ok
}

fn certification_numbers(ws: &Workspace, n: usize, end_dim: usize, cores_len: Option<usize>) -> Outcome {
    let cert = certify_tilting(ws.module("T").unwrap(), n).unwrap();
    let r = &cert.report;
    let got = (r.verified, r.axioms.t1.pd, r.s_dim, r.axioms.t3good.coresolution_length);
    let ok = r.verified && r.axioms.t1.pd == Some(n) && r.s_dim == Some(end_dim) && cores_len.is_none_or(|l| r.axioms.t3good.coresolution_length == Some(l));
    check(ok, format!("(verified, pd, dim End, coresolution length) = {got:?}"))
}

fn c1() -> Outcome {
    certification_numbers(&fixture("FIX-A2.json"), 1, 3, Some(1))
}

fn c2() -> Outcome {
    certification_numbers(&fixture("FIX-N3.json"), 2, 6, None)
}

fn c3() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for name in ["FIX-A2.json", "FIX-N3.json"] {
        let ctx = context(&fixture(name));
        let d = &ctx.dagger.report;
        ok &= d.exact && d.projective_terms && d.length <= ctx.n && d.double_end_ok && d.end_dim == ctx.algebra.dim();
        lines.push(format!("{name}: length {} terms {:?}", d.length, d.term_dims));
    }
    check(ok, lines.join("; "))
}

fn c4() -> Outcome {
    let mut cases = 0;
    for name in ["FIX-A2.json", "FIX-N3.json"] {
        let ctx = context(&fixture(name));
        let c = canonical_modules(&ctx.algebra).unwrap();
        let ms: Vec<FdModule> = c.injectives.iter().cloned().chain(ctx.decomposition.summands.iter().map(|s| s.module.clone())).collect();
        let ps = canonical_modules(&ctx.s).unwrap().projectives;
        for m in &ms {
            for p in &ps {
                let r = ctx.lemma13_check(m, p).unwrap();
                if !r.verified {
                    return check(false, format!("{name}: {:?}", r.failures));
                }
                cases += 1;
            }
        }
    }
    pass(format!("{cases} pairs"))
}

fn c5() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, vertex, i) in [("FIX-A2.json", 1, 1), ("FIX-N3.json", 2, 2)] {
        let ctx = context(&fixture(name));
        let s = &canonical_modules(&ctx.algebra).unwrap().simples[vertex];
        let class = ctx.ke_index(s).unwrap();
        let e = ctx.ext_module(s, i).unwrap();
        let back = ctx.tor_module(&e, i).unwrap();
        ok &= class.index == Some(i) && e.dim() == 1 && iso(&back, s);
        lines.push(format!("{name}: KE index {:?}, dim Ext^{i} = {}, Tor_{i} ≅ S{} {}", class.index, e.dim(), vertex + 1, iso(&back, s)));
    }
    check(ok, lines.join("; "))
}

fn c6() -> Outcome {
    let mut total = 0;
    for name in ["FIX-A2.json", "FIX-N3.json"] {
        let ctx = context(&fixture(name));
        let c = canonical_modules(&ctx.algebra).unwrap();
        let mut suite: Vec<BoundedComplex> = c.simples.iter().chain(&c.projectives).chain(&c.injectives).map(stalk).collect();
        let spec = RandomSpec::default();
        let random = random_suite(&ctx.algebra, &spec, 0, 20).unwrap();
        for x in &random {
            assert!(x.low() >= spec.min_degree && x.high() <= spec.max_degree);
            assert!(x.terms().iter().all(|t| t.dim() <= spec.max_term_dim));
        }
        suite.extend(random);
        for (k, x) in suite.iter().enumerate() {
            let r = counit_check(&ctx, x).unwrap();
            if !r.verified {
                return check(false, format!("{name}: complex {k}: {r:?}"));
            }
            total += 1;
        }
    }
    pass(format!("{total} complexes"))
}

fn c7() -> Outcome {
    let mut total = 0;
    for name in ["FIX-A2.json", "FIX-N3.json"] {
        let ws = fixture(name);
        let ctx = context(&ws);
        let c = canonical_modules(&ctx.s).unwrap();
        let mut suite: Vec<BoundedComplex> = c.simples.iter().chain(&c.projectives).chain(&c.injectives).map(stalk).collect();
        suite.extend(ws.scomplex_names().iter().map(|n| ws.scomplex(&ctx, n).unwrap()));
        suite.extend(random_suite(&ctx.s, &RandomSpec::default(), 0, 20).unwrap());
        let r = classical_probe(&ctx, &suite).unwrap();
        for (x, e) in suite.iter().zip(&r.entries) {
            if !x.is_exact() && e_membership(&ctx, x).unwrap() {
                return check(false, format!("{name}: complex {} with homology lies in E", e.index));
            }
        }
        if !r.verified {
            return check(false, format!("{name}: counterexamples {:?}", r.counterexamples));
        }
        total += suite.len();
    }
    pass(format!("{total} complexes"))
}

fn c8() -> Outcome {
    for n in 0..=3usize {
        let syms: Vec<String> = (0..=n).map(|i| format!("T{i}")).collect();
        let refs: Vec<&str> = syms.iter().map(|s| s.as_str()).collect();
        let g = good_tilt_formal(&FormalExactSequence::from_symbols(&refs)).unwrap();
        let omega = |j: usize| (j..=n).map(|i| format!("T{i}^(ω)")).collect::<Vec<_>>().join(" ⊕ ");
        let module = if n == 0 { "T0".to_string() } else { format!("T0 ⊕ {}", omega(1)) };
        if g.module.to_string() != module {
            return check(false, format!("n = {n}: {}", g.module));
        }
        // final sequence 0 → R → T' → T_1^(ω) ⊕ … → … → T_n^(ω) → 0
        let mut fin = vec!["0".to_string(), "R".to_string(), module];
        fin.extend((1..=n).map(omega));
        fin.push("0".into());
        let last = g.trace.last().map(|s| s.after.to_string()).unwrap_or_else(|| "0 → R → T0 → 0".to_string());
        if last != fin.join(" → ") {
            return check(false, format!("n = {n}: final sequence {last}"));
        }
        if n == 2 {
            let first = &g.trace[0];
            if first.before.to_string() != "0 → R → T0 → T1 ⊕ T2^(ω) → T2 ⊕ T2^(ω) → 0"
                || !first.after.to_string().ends_with("→ T1 ⊕ T2^(ω) → T2^(ω) → 0")
            {
                return check(false, format!("n = 2 first step: {} / {}", first.before, first.after));
            }
        }
    }
    pass("n = 0..3")
}

fn c9() -> Outcome {
    let mut total = 0;
    for name in ["FIX-A2.json", "FIX-N3.json", "FIX-REG.json"] {
        let ws = fixture(name);
        let ctx = context(&ws);
        for (mname, m) in &ws.modules {
            let r = rh(&ctx, &stalk(m)).unwrap();
            let dims = ctx.ext_dims(m).unwrap();
            for i in 0..=ctx.n {
                if r.homology(i as i32).dim() != dims[i] {
                    return check(false, format!("{name}: H^{i} RH({mname})"));
                }
            }
            total += 1;
        }
        for (v, s) in canonical_modules(&ctx.s).unwrap().simples.iter().enumerate() {
            let l = lg(&ctx, &stalk(s), None).unwrap();
            let dims = ctx.tor_dims(s).unwrap();
            for i in 0..=ctx.n {
                if l.homology(-(i as i32)).dim() != dims[i] {
                    return check(false, format!("{name}: H^-{i} LG(simple {v})"));
                }
            }
            total += 1;
        }
    }
    pass(format!("{total} stalks"))
}

/// An `R`-module viewed over `S` through `ψ: S → R`.
fn restrict(ctx: &TiltingContext, psi: &Matrix, m: &FdModule) -> FdModule {
    let action = (0..ctx.s.dim()).map(|b| m.action_of(&psi.row(b))).collect();
    FdModule::new(ctx.s.clone(), action).unwrap()
}

fn c10() -> Outcome {
    let ws = fixture("FIX-REG.json");
    let ctx = context(&ws);
    let Some(psi) = regular_end_isomorphism(&ctx).unwrap() else {
        return check(false, "no algebra isomorphism S → R");
    };
    if !is_algebra_isomorphism(&ctx.s, &ctx.algebra, &psi) {
        return check(false, "ψ is not an algebra isomorphism");
    }
    let c = canonical_modules(&ctx.algebra).unwrap();
    let mut suite: Vec<BoundedComplex> = c.simples.iter().chain(&c.projectives).chain(&c.injectives).map(stalk).collect();
    suite.extend(ws.complexes.values().cloned());
    suite.extend(random_suite(&ctx.algebra, &RandomSpec::default(), 0, 10).unwrap());
    for (k, x) in suite.iter().enumerate() {
        let r = rh(&ctx, x).unwrap();
        let l = lg(&ctx, &r, None).unwrap();
        for j in x.low() - 1..=x.high() + 1 {
            let h = x.homology(j);
            if !iso(&r.homology(j), &restrict(&ctx, &psi, &h)) || !iso(&l.homology(j), &h) {
                return check(false, format!("complex {k}, degree {j}"));
            }
        }
        // lg on S-complexes, then rh back
        let xs = restrict_complex(&ctx, &psi, x);
        let l = lg(&ctx, &xs, None).unwrap();
        if !unit_check(&ctx, &xs).unwrap().verified {
            return check(false, format!("unit on S-side complex {k}"));
        }
        for j in x.low() - 1..=x.high() + 1 {
            if !iso(&l.homology(j), &x.homology(j)) {
                return check(false, format!("S-side complex {k}, degree {j}"));
            }
        }
    }
    pass(format!("{} complexes", suite.len()))
}

fn restrict_complex(ctx: &TiltingContext, psi: &Matrix, x: &BoundedComplex) -> BoundedComplex {
    let terms: Vec<FdModule> = x.terms().iter().map(|t| restrict(ctx, psi, t)).collect();
    let diffs: Vec<Matrix> = (x.low()..x.high()).map(|i| x.diff_matrix(i)).collect();
    BoundedComplex::new(ctx.s.clone(), x.low(), terms, diffs).unwrap()
}

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let results = [
        run(1, s(1), c1),
        run(2, s(1), c2),
        run(3, s(1), c3),
        run(4, s(2), c4),
        run(5, s(2), c5),
        run(6, s(30), c6),
        run(7, s(30), c7),
        run(8, Duration::from_millis(100), c8),
        run(9, s(5), c9),
        run(10, s(1), c10),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
