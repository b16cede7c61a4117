use refl3d_core::coeff::{CoeffRing, Coefficient, EvalPoint, Evaluated, Poly, Symbolic};
use refl3d_core::embed::{verify_embedding, GeneratorOrder, RewriteSystem};
use refl3d_core::equations::{random_vectors, verify_equation, verify_s_symmetries, verify_vectors, EquationSpec, Tensors};
use refl3d_core::fock::MultiIndex;
use refl3d_core::frt::{check_invertible, check_ybe, rtt_check, Family, StructureConstants};
use refl3d_core::intertwiner::{closed_form_s, undress_j, undress_s, BlockKey, Tensor, TensorKind};
use refl3d_core::reps::{b2_subrep, build_rep, ParameterSet};

use crate::cache::{block_file, block_text, BlockCache};
use crate::options::Mode;
use crate::run::Run;
use crate::{Cli, Command};

type Outcome = Result<bool, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let params = cli.params.load()?;
    match &cli.command {
        Command::ComputeS => compute(cli, &params, TensorKind::S),
        Command::ComputeJ => compute(cli, &params, TensorKind::J),
        Command::VerifyTetrahedron => tetrahedron(cli, &params),
        Command::VerifyThreeDReflection { sample, sample_window, seed, form } => {
            reflection(cli, &params, *sample, *sample_window, *seed, form)
        }
        Command::VerifyRtt => rtt(cli, &params),
        Command::VerifyEmbedding { trace, order } => embedding(cli, *trace, order),
        Command::VerifySymmetries => symmetries(cli, &params),
        Command::EvalS { a, b, c, i, j, k } => {
            println!("{}", closed_form_s(*a, *b, *c, *i, *j, *k));
            Ok(true)
        }
        Command::ShowJExample => j_example(cli, &params),
    }
}

fn start(cli: &Cli, name: &str, params: Option<&ParameterSet>) -> Run {
    let mut run = Run::new(name, cli.out.clone());
    if let Some(p) = params {
        run.setting("params", p.describe());
    }
    run
}

fn symbolic_tensor(cli: &Cli, kind: TensorKind, params: &ParameterSet) -> Result<Tensor<Symbolic>, String> {
    let t = Tensor::new(kind, Symbolic, params.clone()).map_err(err)?;
    if let Some(dir) = &cli.cache {
        BlockCache::new(dir).preload(&t);
    }
    Ok(t)
}

fn store(cli: &Cli, t: &Tensor<Symbolic>) -> Result<(), String> {
    match &cli.cache {
        Some(dir) => BlockCache::new(dir).store(t).map_err(err),
        None => Ok(()),
    }
}

/// Evaluated tensors skip per-block re-verification; see the README.
fn evaluated_tensor(kind: TensorKind, params: &ParameterSet, point: &EvalPoint) -> Result<Tensor<Evaluated>, String> {
    Ok(Tensor::new(kind, Evaluated::new(point.clone()), params.clone()).map_err(err)?.with_block_verification(false))
}

fn compute(cli: &Cli, params: &ParameterSet, kind: TensorKind) -> Outcome {
    if cli.mode != Mode::Symbolic {
        return Err("tensor dumps are symbolic; use --mode symbolic".into());
    }
    let max = cli.max_block.unwrap_or(match kind {
        TensorKind::S => 6,
        TensorKind::J => 4,
    });
    let mut run = start(cli, &format!("compute-{}", kind.name().to_lowercase()), Some(params));
    run.setting("max_block", max);
    run.setting("mode", "symbolic");
    let t = symbolic_tensor(cli, kind, params)?;
    let blocks = t.solve_up_to(max).map_err(err)?;
    store(cli, &t)?;
    let desc = params.describe();
    let mut entries = 0;
    for b in &blocks {
        entries += b.nonzero_entries().len();
        run.artifact(&block_file(kind, b.key), &block_text(kind, &desc, b)).map_err(err)?;
    }
    let unique = blocks.iter().all(|b| b.uniqueness == 1);
    run.check(
        unique,
        format!("CHECK {}-uniqueness vectors={} window={max} mode=symbolic result={}", kind, blocks.len(), verdict(unique)),
    );
    let mut bad: Option<String> = None;
    let mut twisted_bad: Option<String> = None;
    let mut selection_bad: Option<String> = None;
    for b in &blocks {
        for (o, x, v) in b.nonzero_entries() {
            let (ov, xv) = (o.to_vec(), x.to_vec());
            let witness = || Some(format!("{o:?}{x:?}"));
            if kind.key(o) != kind.key(x) && selection_bad.is_none() {
                selection_bad = witness();
            }
            let ok = match kind {
                TensorKind::S => {
                    let bare = undress_s(params, &v, [ov[0], ov[1], ov[2]], [xv[0], xv[1], xv[2]]).map_err(err)?;
                    bare == closed_form_s(ov[0], ov[1], ov[2], xv[0], xv[1], xv[2])
                }
                TensorKind::J => {
                    let bare = undress_j(params, &v, [ov[0], ov[1], ov[2], ov[3]], [xv[0], xv[1], xv[2], xv[3]]).map_err(err)?;
                    let twist = Coefficient::q_pow(i64::from(ov[0] * ov[2] + xv[0] * xv[2]));
                    if !bare.mul(&twist).is_polynomial_in_q_squared() && twisted_bad.is_none() {
                        twisted_bad = witness();
                    }
                    bare.is_polynomial_in_q_squared()
                }
            };
            if !ok && bad.is_none() {
                bad = witness();
            }
        }
    }
    let mut emit = |name: &str, bad: &Option<String>| {
        let mut line = format!("CHECK {name} vectors={entries} window={max} mode=symbolic result={}", verdict(bad.is_none()));
        if let Some(w) = bad {
            line.push_str(&format!(" witness={w}"));
        }
        run.check(bad.is_none(), line);
    };
    match kind {
        TensorKind::S => emit("S-closed-form", &bad),
        TensorKind::J => {
            emit("J-selection-rule", &selection_bad);
            emit("J-polynomial-q2", &bad);
            emit("J-parity", &twisted_bad);
        }
    }
    run.finish().map_err(err)
}

fn check_spec<R: CoeffRing + Clone>(
    run: &mut Run,
    spec: &EquationSpec,
    s: &Tensor<R>,
    j: Option<&Tensor<R>>,
    vectors: Option<(&[MultiIndex], &str)>,
    window: u32,
) -> Result<(), String> {
    let tensors = Tensors { s, j };
    let report = match vectors {
        Some((v, label)) => verify_vectors(spec, &tensors, v, label),
        None => verify_equation(spec, &tensors, window),
    }
    .map_err(err)?;
    if let Some(k) = report.max_block {
        run.setting(&format!("max_block.{}.{}", spec.name, report.mode), k);
    }
    run.check(report.passed(), report.line());
    Ok(())
}

fn tetrahedron(cli: &Cli, params: &ParameterSet) -> Outcome {
    let window = cli.window.unwrap_or(2);
    let spec = EquationSpec::tetrahedron();
    let mut run = start(cli, "verify-tetrahedron", Some(params));
    run.setting("window", window);
    run.setting("mode", cli.mode.label());
    match &cli.mode {
        Mode::Symbolic => {
            let s = symbolic_tensor(cli, TensorKind::S, params)?;
            check_spec(&mut run, &spec, &s, None, None, window)?;
            store(cli, &s)?;
        }
        Mode::Evaluated(points) => {
            for p in points {
                let s = evaluated_tensor(TensorKind::S, params, p)?;
                check_spec(&mut run, &spec, &s, None, None, window)?;
            }
        }
    }
    run.finish().map_err(err)
}

fn reflection(cli: &Cli, params: &ParameterSet, sample: usize, sample_window: u32, seed: u64, form: &str) -> Outcome {
    let window = cli.window.unwrap_or(1);
    let specs = match form {
        "main" => vec![EquationSpec::three_d_reflection()],
        "moved" => vec![EquationSpec::three_d_reflection_moved()],
        "both" => vec![EquationSpec::three_d_reflection(), EquationSpec::three_d_reflection_moved()],
        _ => return Err(format!("--form must be main, moved or both, got {form:?}")),
    };
    let mut run = start(cli, "verify-3d-reflection", Some(params));
    run.setting("window", window);
    run.setting("mode", cli.mode.label());
    match &cli.mode {
        Mode::Symbolic => {
            let s = symbolic_tensor(cli, TensorKind::S, params)?;
            let j = symbolic_tensor(cli, TensorKind::J, params)?;
            for spec in &specs {
                check_spec(&mut run, spec, &s, Some(&j), None, window)?;
            }
            store(cli, &s)?;
            store(cli, &j)?;
        }
        Mode::Evaluated(points) => {
            for p in points {
                let s = evaluated_tensor(TensorKind::S, params, p)?;
                let j = evaluated_tensor(TensorKind::J, params, p)?;
                for spec in &specs {
                    check_spec(&mut run, spec, &s, Some(&j), None, window)?;
                }
            }
        }
    }
    if sample > 0 {
        let points = match &cli.mode {
            Mode::Evaluated(ps) => ps.clone(),
            Mode::Symbolic => EvalPoint::defaults(),
        };
        let vectors = random_vectors(9, sample_window, sample, seed);
        run.setting("sample", format!("{sample}@{sample_window} seed={seed}"));
        for p in &points {
            let s = evaluated_tensor(TensorKind::S, params, p)?;
            let j = evaluated_tensor(TensorKind::J, params, p)?;
            for spec in &specs {
                check_spec(&mut run, spec, &s, Some(&j), Some((&vectors, &format!("{sample_window}"))), sample_window)?;
            }
        }
    }
    run.finish().map_err(err)
}

fn rtt(cli: &Cli, params: &ParameterSet) -> Outcome {
    let cutoff = cli.window.unwrap_or(12);
    let mut run = start(cli, "verify-rtt", Some(params));
    run.setting("window", cutoff);
    for (family, reps) in [
        (Family::B(3), (1..=3).map(|i| build_rep(i, params)).collect::<Result<Vec<_>, _>>().map_err(err)?),
        (Family::B(2), (1..=2).map(|i| b2_subrep(i, params)).collect::<Result<Vec<_>, _>>().map_err(err)?),
    ] {
        let sc = StructureConstants::accepted(family, 4).map_err(err)?;
        let ybe = check_ybe(&sc.r);
        let n3 = family.dim().pow(3);
        let mut line = format!("CHECK ybe-{family} vectors={n3} window=- mode=symbolic result={}", verdict(ybe.is_none()));
        if let Some(t) = ybe {
            line.push_str(&format!(" witness={t:?}"));
        }
        run.check(ybe.is_none(), line);
        let inv = check_invertible(&sc.r).is_ok();
        run.check(inv, format!("CHECK invertible-{family} vectors={} window=- mode=symbolic result={}", family.dim().pow(2), verdict(inv)));
        for rep in &reps {
            let report = rtt_check(rep, &sc, cutoff).map_err(err)?;
            run.check(report.passed(), report.line());
        }
    }
    run.finish().map_err(err)
}

fn embedding(cli: &Cli, trace: bool, order: &str) -> Outcome {
    let order = match order {
        "row-major" => GeneratorOrder::RowMajor,
        "column-major" => GeneratorOrder::ColumnMajor,
        _ => return Err(format!("--order must be row-major or column-major, got {order:?}")),
    };
    let mut run = start(cli, "verify-embedding", None);
    let c2 = StructureConstants::accepted(Family::C2, 4).map_err(err)?;
    let b2 = StructureConstants::accepted(Family::B(2), 4).map_err(err)?;
    let rs = RewriteSystem::for_c2(&c2, 4, order).map_err(err)?;
    let report = verify_embedding(&b2, &rs).map_err(err)?;
    run.setting("order", order.name());
    run.setting("degree_bound", rs.max_degree);
    run.setting("sqrt_r_branch", report.sqrt_r_branch);
    run.setting("relations_nonempty", report.nonempty());
    run.setting("max_image_terms", report.max_image_terms);
    if trace {
        let mut text = report.trace().join("\n");
        text.push('\n');
        run.artifact("relations.trace", &text).map_err(err)?;
    }
    run.check(report.passed(), report.line());
    run.finish().map_err(err)
}

fn symmetries(cli: &Cli, params: &ParameterSet) -> Outcome {
    let max = cli.max_block.unwrap_or(6);
    let mut run = start(cli, "verify-symmetries", Some(params));
    run.setting("max_block", max);
    let s = symbolic_tensor(cli, TensorKind::S, params)?;
    let report = verify_s_symmetries(&s, max).map_err(err)?;
    store(cli, &s)?;
    let [inv, rev] = <[String; 2]>::try_from(report.lines(max)).expect("two lines");
    run.check(report.involution_failures.is_empty(), inv);
    run.check(report.reversal_failures.is_empty(), rev);
    run.finish().map_err(err)
}

fn poly(c: &[i64]) -> Coefficient {
    Coefficient::from_poly(Poly::from_i64s(c.to_vec()))
}

fn one_minus(e: usize) -> Coefficient {
    let mut v = vec![0; e + 1];
    v[0] = 1;
    v[e] = -1;
    poly(&v)
}

/// Nonzero entries `J^{1102}_{ijkl}` of the parameter-free tensor.
fn j_table() -> Vec<([u32; 4], Coefficient)> {
    let q = Coefficient::q_pow;
    vec![
        ([3, 0, 0, 3], q(8).mul(&one_minus(6)).mul(&one_minus(12))),
        ([2, 0, 1, 2], q(4).mul(&one_minus(4)).mul(&poly(&[1, 0, -1, 0, 1, 0, -1, 0, 0, 0, -1]))),
        ([1, 0, 2, 1], q(6).mul(&one_minus(6)).neg()),
        ([0, 0, 3, 0], q(2).mul(&one_minus(6)).neg()),
        ([1, 1, 0, 2], q(2).mul(&poly(&[1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1]))),
        ([0, 1, 1, 1], poly(&[1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1])),
    ]
}

fn j_example(cli: &Cli, params: &ParameterSet) -> Outcome {
    let mut run = start(cli, "show-j-example", Some(params));
    let out = [1, 1, 0, 2];
    let t = symbolic_tensor(cli, TensorKind::J, params)?;
    let key = TensorKind::J.key(MultiIndex::new(&out));
    let block = t.block(key).map_err(err)?;
    store(cli, &t)?;
    let table = j_table();
    let mut ok = true;
    let mut text = String::new();
    for x in &block.states {
        let xv = x.to_vec();
        let inp = [xv[0], xv[1], xv[2], xv[3]];
        let solved = block.entry(&MultiIndex::new(&out), x).cloned().unwrap_or_default();
        let bare = undress_j(params, &solved, out, inp).map_err(err)?;
        let expect = table.iter().find(|(k, _)| *k == inp).map(|(_, v)| v.clone()).unwrap_or_default();
        let good = bare == expect;
        ok &= good;
        let line = format!("J^{{1,1,0,2}}_{{{}}} = {bare}  [{}]", x, verdict(good));
        text.push_str(&line);
        text.push('\n');
        run.line(line);
    }
    run.artifact("j_example.txt", &text).map_err(err)?;
    run.setting("block", BlockKey::new(key.p, key.q));
    run.check(ok, format!("CHECK j-example vectors={} window=- mode=symbolic result={}", block.len(), verdict(ok)));
    run.finish().map_err(err)
}
