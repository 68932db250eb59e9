use std::collections::HashSet;
use std::path::Path;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gardenhose::bounds::{
    alice_collision, bob_collision, counting_bound_size, counting_inequality_holds, exhaustive_gh_capped,
    min_size_injective_bound, t_log_t_at_least, GhSearch, MAX_COUNTING_N,
};
use gardenhose::ghcore::{
    bits_to_string, computes, exit_side, flow, parse_game, render_diagram, validate_game, write_game, Bits,
};
use gardenhose::pbp::{alternate, compile_circuit, default_output, parse_netlist, program_to_game};
use gardenhose::quantum::{
    acceptance_rate, build_mub, mub_permute, mub_permute_symplectic, pauli_frame_attack, pv_mub_attack,
    statevector_attack, BellOutcome, CheckMode, NaiveMeasure, PauliString, Sampled, StateVector, TeleportCheat,
};
use gardenhose::strategies::{build_eq, build_generic, build_ip, build_maj, build_maj_optimized, build_xor};
use gardenhose::tm::{check_reversible_oblivious, compile_tm, parse_tm, run, sample, TmError, TmSpec};
use gardenhose::{BooleanFunction, GameError, GardenHoseGame, Side};

use super::report::{Case, Report};
use super::{
    AttackArgs, BoundsArgs, BoundsCommand, BuildArgs, CheckModeArg, CliError, Command, CompileCircuitArgs,
    CompileTmArgs, Construction, EvalArgs, MubArgs, MubCommand, RenderArgs, VerifyArgs,
};

/// Largest `2n` for which the compilers compare against the source on all
/// input pairs.
const VERIFY_INPUT_BITS: usize = 20;
const FIDELITY_TOLERANCE: f64 = 1e-10;
const UNBIASED_TOLERANCE: f64 = 1e-9;

pub enum Output {
    Report(Report),
    /// Non-report output (DOT text).
    Raw(String),
}

pub fn dispatch(command: Command, echo: String) -> Result<Output, CliError> {
    let mut report = Report::new(echo);
    match command {
        Command::Build(a) => build(a, &mut report)?,
        Command::Verify(a) => verify(a, &mut report)?,
        Command::Eval(a) => eval(a, &mut report)?,
        Command::Render(a) => {
            if let Some(text) = render(a, &mut report)? {
                return Ok(Output::Raw(text));
            }
        }
        Command::CompileCircuit(a) => compile_circuit_cmd(a, &mut report)?,
        Command::CompileTm(a) => compile_tm_cmd(a, &mut report)?,
        Command::Bounds(a) => bounds(a, &mut report)?,
        Command::Search(a) => {
            let f = resolve_fn(&a.function, Some(a.n))?;
            search(&f, a.cap, a.output.as_deref(), &mut report)?
        }
        Command::Attack(a) => attack(a, &mut report)?,
        Command::Mub(a) => mub(a, &mut report)?,
    }
    Ok(Output::Report(report))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_game(path: &Path) -> Result<GardenHoseGame, CliError> {
    parse_game(&read(path)?).map_err(|source| CliError::GameFile { path: path.to_path_buf(), source })
}

/// A truth-table file if `spec` names an existing file, otherwise one of
/// the named functions.
fn resolve_fn(spec: &str, n: Option<usize>) -> Result<BooleanFunction, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let f = BooleanFunction::parse_table(&read(path)?)
            .map_err(|source| CliError::GameFile { path: path.to_path_buf(), source })?;
        if let Some(n) = n.filter(|&n| n != f.n()) {
            return Err(CliError::Usage(format!("{spec} is a function on {} bits, expected {n}", f.n())));
        }
        return Ok(f);
    }
    let n = n.ok_or_else(|| CliError::Usage(format!("--n is needed for the named function {spec:?}")))?;
    Ok(BooleanFunction::named(spec, n)?)
}

fn parse_input(s: &str, n: usize, name: &str) -> Result<u64, CliError> {
    let b: Bits = s.parse()?;
    if b.len != n {
        return Err(CliError::Usage(format!("-{name} has {} bits, the game takes {n}", b.len)));
    }
    Ok(b.value)
}

fn pair_name(x: u64, y: u64, n: usize) -> String {
    format!("{}:{}", bits_to_string(x, n), bits_to_string(y, n))
}

fn ensure_valid(game: &GardenHoseGame) -> Result<(), CliError> {
    match validate_game(game).into_iter().next() {
        Some(v) => Err(GameError::Invalid(v).into()),
        None => Ok(()),
    }
}

fn build(a: BuildArgs, report: &mut Report) -> Result<(), CliError> {
    let n = a.n;
    let game = match a.kind {
        Construction::Xor if n != 1 => return Err(CliError::Usage("the XOR construction is for n = 1".into())),
        Construction::Xor => build_xor(),
        Construction::Eq => build_eq(n)?,
        Construction::Ip => build_ip(n)?,
        Construction::Maj => build_maj(n)?,
        Construction::MajOpt => build_maj_optimized(n)?,
        Construction::Generic => {
            let spec = a.function.as_deref().ok_or_else(|| CliError::Usage("generic needs --fn".into()))?;
            build_generic(&resolve_fn(spec, Some(n))?)?
        }
    };
    write(&a.output, &write_game(&game))?;
    let kind = a.kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    report.push(
        Case::new("build", true)
            .with("kind", kind)
            .with("n", n)
            .with("size", game.size())
            .with("output", a.output.display().to_string()),
    );
    Ok(())
}

fn verify(a: VerifyArgs, report: &mut Report) -> Result<(), CliError> {
    let game = load_game(&a.game)?;
    let f = resolve_fn(&a.function, Some(game.n()))?;
    let violations = validate_game(&game);
    if let Some(v) = violations.first() {
        report.push(Case::new("valid", false).with("violations", violations.len()).with("first", v.to_string()));
        return Ok(());
    }
    report.push(Case::new("valid", true).with("n", game.n()).with("size", game.size()));
    let verdict = computes(&game, &f)?;
    let mut case = Case::new("computes", verdict.holds).with("pairs", verdict.pairs_checked);
    if let Some((x, y)) = verdict.counterexample {
        let n = game.n();
        case = case
            .with("x", bits_to_string(x, n))
            .with("y", bits_to_string(y, n))
            .with("expected", f.value(x, y) as u8)
            .with("exit", exit_side(&game, x, y)?.to_string());
    }
    report.push(case);
    Ok(())
}

fn eval(a: EvalArgs, report: &mut Report) -> Result<(), CliError> {
    let game = load_game(&a.game)?;
    let n = game.n();
    let (x, y) = (parse_input(&a.x, n, "x")?, parse_input(&a.y, n, "y")?);
    let path = flow(&game, x, y)?;
    let side = path.terminal_side;
    report.push(
        Case::new("flow", true)
            .with("x", a.x.trim())
            .with("y", a.y.trim())
            .with("exit", side.to_string())
            .with("value", side.as_bit() as u8)
            .with("hoses", path.hops().len())
            .with("path", path.to_string()),
    );
    let (alice, bob) = gardenhose::tm::encode_inputs(&game, x, y);
    let value = gardenhose::tm::eval_encoded(&alice, &bob)?;
    report.push(
        Case::new("encoded", value == side.as_bit())
            .with("value", value as u8)
            .with("alice_bits", alice.len())
            .with("bob_bits", bob.len()),
    );
    Ok(())
}

fn render(a: RenderArgs, report: &mut Report) -> Result<Option<String>, CliError> {
    let game = load_game(&a.game)?;
    let n = game.n();
    let (x, y) = (parse_input(&a.x, n, "x")?, parse_input(&a.y, n, "y")?);
    let dot = render_diagram(&game, x, y)?;
    let Some(out) = a.output else {
        return Ok(Some(dot));
    };
    write(&out, &dot)?;
    report.push(
        Case::new("render", true)
            .with("exit", exit_side(&game, x, y)?.to_string())
            .with("output", out.display().to_string()),
    );
    Ok(None)
}

fn compile_circuit_cmd(a: CompileCircuitArgs, report: &mut Report) -> Result<(), CliError> {
    let c = parse_netlist(&read(&a.input)?)?;
    let n = c.n();
    let program = compile_circuit(&c)?;
    let depth = c.depth();
    let bound = 4u128.checked_pow(depth as u32).unwrap_or(u128::MAX);
    report.push(
        Case::new("program", (program.len() as u128) <= bound)
            .with("n", n)
            .with("gates", c.gates().len())
            .with("depth", depth)
            .with("length", program.len())
            .with("bound", bound.to_string()),
    );
    let alt = alternate(&program, n)?;
    let game = program_to_game(&alt)?;
    let expected_size = 5 * alt.len() as u64 + 4;
    report.push(
        Case::new("game", game.size() as u64 == expected_size)
            .with("layers", alt.len())
            .with("size", game.size()),
    );
    if a.no_verify || c.input_len() > VERIFY_INPUT_BITS {
        report.summary("verified", false);
    } else {
        let out = default_output();
        let mismatch = (0..1u64 << c.input_len()).find(|&z| {
            let want = if c.eval(z) { out } else { gardenhose::pbp::Permutation::IDENTITY };
            program.eval(z) != want
        });
        let mut case = Case::new("program-eval", mismatch.is_none()).with("inputs", 1u64 << c.input_len());
        if let Some(z) = mismatch {
            case = case.with("input", bits_to_string(z, c.input_len()));
        }
        report.push(case);
        let f = BooleanFunction::from_fn(n, |x, y| c.eval(x << n | y))?;
        let verdict = computes(&game, &f)?;
        let mut case = Case::new("computes", verdict.holds).with("pairs", verdict.pairs_checked);
        if let Some((x, y)) = verdict.counterexample {
            case = case.with("x", bits_to_string(x, n)).with("y", bits_to_string(y, n));
        }
        report.push(case);
        report.summary("verified", true);
    }
    if let Some(out) = &a.output {
        write(out, &write_game(&game))?;
    }
    Ok(())
}

fn load_machine(a: &CompileTmArgs) -> Result<TmSpec, CliError> {
    match (&a.machine, &a.sample) {
        (Some(path), _) => Ok(parse_tm(&read(path)?)?),
        (None, Some(name)) => Ok(sample(name, a.n)?),
        (None, None) => Err(CliError::Usage("give --machine or --sample".into())),
    }
}

fn compile_tm_cmd(a: CompileTmArgs, report: &mut Report) -> Result<(), CliError> {
    let m = load_machine(&a)?;
    let n = m.n;
    let check = check_reversible_oblivious(&m)?;
    let mut case = Case::new("check", check.ok())
        .with("machine", m.name.clone())
        .with("n", n)
        .with("inputs", check.inputs)
        .with("configurations", check.universe);
    if let Some(c) = &check.reversibility {
        case = case
            .with("collision", pair_name(c.x, c.y, n))
            .with("first", c.first.display(&m).to_string())
            .with("second", c.second.display(&m).to_string())
            .with("successor", c.successor.display(&m).to_string());
    }
    if let Some(d) = &check.obliviousness {
        case = case.with("head_divergence", pair_name(d.x, d.y, n)).with("step", d.step);
    }
    report.push(case);

    let compiled = match compile_tm(&m) {
        Ok(c) => c,
        Err(e @ TmError::WiringCollision { .. }) => {
            report.push(Case::new("compile", false).with("error", e.to_string()));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let (ca, cb) = (compiled.sets.c_a.len(), compiled.sets.c_b.len());
    let size = compiled.game.size() as usize;
    // one extra ACCEPT pipe when the tap segment accepts without crossing
    let tap_accept = compiled.layout.accept > ca;
    let bound = 2 * (ca + cb) + tap_accept as usize;
    report.push(
        Case::new("compile", size <= bound)
            .with("c_a", ca)
            .with("c_b", cb)
            .with("size", size)
            .with("bound", bound),
    );
    let mut mismatch = None;
    'outer: for x in 0..1u64 << n {
        for y in 0..1u64 << n {
            if run(&m, x, y)?.accepted != exit_side(&compiled.game, x, y)?.as_bit() {
                mismatch = Some((x, y));
                break 'outer;
            }
        }
    }
    let mut case = Case::new("agreement", mismatch.is_none()).with("pairs", 1u64 << (2 * n));
    if let Some((x, y)) = mismatch {
        case = case.with("input", pair_name(x, y, n));
    }
    report.push(case);
    if let Some(out) = &a.output {
        write(out, &write_game(&compiled.game))?;
    }
    Ok(())
}

fn bounds(a: BoundsArgs, report: &mut Report) -> Result<(), CliError> {
    let n = a.n;
    let need_fn = || {
        a.function.as_deref().ok_or_else(|| CliError::Usage("this bound needs --fn".into())).and_then(|s| resolve_fn(s, Some(n)))
    };
    match a.which {
        BoundsCommand::Injective => {
            let f = need_fn()?;
            for (name, collision) in [("alice", alice_collision(&f)), ("bob", bob_collision(&f))] {
                let mut case = Case::new(name, collision.is_none()).with("n", n);
                if let Some((u, v)) = collision {
                    case = case.with("same_row", format!("{},{}", bits_to_string(u, n), bits_to_string(v, n)));
                }
                report.push(case);
            }
        }
        BoundsCommand::Lb => {
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let s = min_size_injective_bound(n as u64);
            let holds = t_log_t_at_least(s, n as u64);
            let below = s > 0 && t_log_t_at_least(s - 1, n as u64);
            report.push(Case::new("lb", holds && !below).with("n", n).with("s", s));
        }
        BoundsCommand::Counting => {
            let s = counting_bound_size(n as u32).ok_or_else(|| {
                CliError::Usage(format!("the counting bound is computed for 1 ≤ n ≤ {MAX_COUNTING_N}"))
            })?;
            let holds = counting_inequality_holds(s, n as u32);
            let below = s > 0 && counting_inequality_holds(s - 1, n as u32);
            report.push(Case::new("counting", holds && !below).with("n", n).with("s", s));
        }
        BoundsCommand::Search { cap } => search(&need_fn()?, cap, None, report)?,
    }
    Ok(())
}

fn search(f: &BooleanFunction, cap: u32, output: Option<&Path>, report: &mut Report) -> Result<(), CliError> {
    match exhaustive_gh_capped(f, cap)? {
        GhSearch::Exact { size, witness } => {
            let verdict = computes(&witness, f)?;
            report.push(Case::new("search", verdict.holds).with("n", f.n()).with("cap", cap).with("gh", size));
            if let Some(out) = output {
                write(out, &write_game(&witness))?;
            }
        }
        GhSearch::AtLeast(c) => {
            report.push(Case::new("search", true).with("n", f.n()).with("cap", cap).with("gh_at_least", c));
        }
    }
    Ok(())
}

fn attack(a: AttackArgs, report: &mut Report) -> Result<(), CliError> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let game = load_game(&a.game)?;
    ensure_valid(&game)?;
    let n = game.n();
    let f = match &a.function {
        Some(spec) => resolve_fn(spec, Some(n))?,
        None => {
            BooleanFunction::from_fn(n, |x, y| exit_side(&game, x, y).expect("validated game").as_bit())?
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut worst: f64 = 1.0;
    for x in 0..1u64 << n {
        for y in 0..1u64 << n {
            let expected = Side::from_bit(f.value(x, y));
            let name = pair_name(x, y, n);
            let case = if a.frame {
                let hops = flow(&game, x, y)?.hops().len();
                let mut sides_ok = true;
                let mut corrections = HashSet::new();
                for _ in 0..a.trials {
                    let outcomes: Vec<BellOutcome> =
                        (0..hops).map(|_| BellOutcome::ALL[rng.gen_range(0..4)]).collect();
                    let r = pauli_frame_attack(&game, x, y, &outcomes)?;
                    sides_ok &= r.side == expected;
                    corrections.insert(r.correction.letters()[0]);
                }
                Case::new(name, sides_ok)
                    .with("exit", if sides_ok { expected } else { expected.other() }.to_string())
                    .with("expected", expected.to_string())
                    .with("hoses", hops)
                    .with("corrections", corrections.len())
            } else {
                let mut sides_ok = true;
                let mut frames_ok = true;
                let mut min_fidelity: f64 = 1.0;
                let mut hoses = 0;
                for _ in 0..a.trials {
                    let psi = StateVector::random_qubit(&mut rng);
                    let r = statevector_attack(&game, x, y, &psi, &mut Sampled(&mut rng))?;
                    let frame = pauli_frame_attack(&game, x, y, &r.path_outcomes)?;
                    sides_ok &= r.side == expected;
                    frames_ok &= frame.correction == r.frame && r.extracted == Some(r.frame.letters()[0]);
                    min_fidelity = min_fidelity.min(r.fidelity);
                    hoses = r.path_outcomes.len();
                }
                worst = worst.min(min_fidelity);
                Case::new(name, sides_ok && frames_ok && min_fidelity >= 1.0 - FIDELITY_TOLERANCE)
                    .with("expected", expected.to_string())
                    .with("side_ok", sides_ok)
                    .with("min_fidelity", min_fidelity)
                    .with("frame_agrees", frames_ok)
                    .with("hoses", hoses)
            };
            report.push(case);
        }
    }
    report.summary("mode", if a.frame { "frame" } else { "statevector" });
    report.summary("trials", a.trials);
    report.summary("seed", a.seed);
    if !a.frame {
        report.summary("min_fidelity", worst);
    }
    if a.protocol {
        let (mode, naive_target) = match a.check {
            CheckModeArg::Stabilizer => (CheckMode::RandomStabilizer, 0.75),
            CheckModeArg::Bell => (CheckMode::BellProjection, 0.5),
        };
        let honest = acceptance_rate(&f, None, mode, a.trials, &mut rng)?;
        report.push(Case::new("protocol-honest", honest == 1.0).with("acceptance", honest));
        let cheat = TeleportCheat { game: &game };
        let teleport = acceptance_rate(&f, Some(&cheat), mode, a.trials, &mut rng)?;
        report.push(Case::new("protocol-teleport", teleport == 1.0).with("acceptance", teleport));
        let naive = NaiveMeasure { f: &f };
        let measured = acceptance_rate(&f, Some(&naive), mode, a.trials, &mut rng)?;
        report.push(Case::new("protocol-measure", true).with("acceptance", measured).with("ideal", naive_target));
    }
    Ok(())
}

fn mub(a: MubArgs, report: &mut Report) -> Result<(), CliError> {
    let fam = build_mub(a.n)?;
    let n = fam.n();
    let d = 1usize << n;
    match a.which {
        MubCommand::Check => {
            let mut seen = HashSet::new();
            let mut partition_ok = fam.classes().len() == d + 1;
            for (i, class) in fam.classes().iter().enumerate() {
                let commuting = class.iter().all(|p| class.iter().all(|q| p.commutes_with(q)));
                let fresh = class.iter().all(|p| seen.insert(p.clone()));
                let ok = commuting && fresh && class.len() == d - 1;
                partition_ok &= ok;
                let join = |v: &[PauliString]| {
                    v.iter().map(|p| p.to_string().trim_start_matches('+').to_string()).collect::<Vec<_>>().join(",")
                };
                report.push(
                    Case::new(format!("class-{i}"), ok)
                        .with("members", join(class))
                        .with("generators", join(&fam.generators()[i])),
                );
            }
            report.push(Case::new("partition", partition_ok && seen.len() == d * d - 1).with("strings", seen.len()));
            let unbiased = fam.max_unbiasedness_error();
            report.push(Case::new("unbiased", unbiased <= UNBIASED_TOLERANCE).with("max_error", unbiased));
            let ortho = fam.max_orthonormality_error();
            report.push(Case::new("orthonormal", ortho <= UNBIASED_TOLERANCE).with("max_error", ortho));
            let mut checked = 0u64;
            let mut mismatch = None;
            for xs in 0..d as u64 {
                for zs in 0..d as u64 {
                    let u = PauliString::from_symplectic(n, xs, zs);
                    for b in 0..=d {
                        for x in 0..d {
                            checked += 1;
                            if mismatch.is_none() && mub_permute(&u, &fam, b, x)? != mub_permute_symplectic(&u, &fam, b, x) {
                                mismatch = Some(format!("{u}/{b}/{x}"));
                            }
                        }
                    }
                }
            }
            let mut case = Case::new("permutation", mismatch.is_none()).with("checked", checked);
            if let Some(m) = mismatch {
                case = case.with("mismatch", m);
            }
            report.push(case);
        }
        MubCommand::Attack { trials, seed } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut total = 0usize;
            let mut recovered_total = 0usize;
            for b in 0..=d {
                let mut recovered = 0;
                for x in 0..d {
                    for _ in 0..trials {
                        let r = pv_mub_attack(&fam, b, x, &mut Sampled(&mut rng))?;
                        recovered += (r.x_hat == x) as usize;
                    }
                }
                total += d * trials;
                recovered_total += recovered;
                report.push(
                    Case::new(format!("basis-{b}"), recovered == d * trials)
                        .with("runs", d * trials)
                        .with("recovered", recovered)
                        .with("epr_pairs", n),
                );
            }
            report.summary("runs", total);
            report.summary("recovered", recovered_total);
            report.summary("seed", seed);
        }
    }
    Ok(())
}
