//! Descriptor files, TSV reports and the `sharpgpt` command line.
//!
//! Theory files name a kind and its size, e.g. `{"kind":"complex_hermitian","n":3}`,
//! `{"kind":"classical","d":4}` or `{"kind":"spin_factor","m":3}`. Experiment
//! files embed a theory and list 1-based slit blocks over a Jordan frame.
//! Table files give detection probabilities keyed by digit strings.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::adjoint;
use crate::eja::{self, AlgebraKind, JordanElement};
use crate::error::{Error, Result};
use crate::interference::{self, InterferenceReport, SlitExperiment, Subset, ValueTable};
use crate::linalg::Matrix;
use crate::projectors::{self, LinearMap};
use crate::sampling;
use crate::system::{self, Effect, State, SystemModel};

/// Largest rank accepted from a theory file.
pub const MAX_DESCRIPTOR_RANK: usize = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryDescriptor {
    pub kind: AlgebraKind,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameChoice {
    Standard,
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentDescriptor {
    pub theory: TheoryDescriptor,
    /// 0-based frame indices per slit.
    pub blocks: Vec<Vec<usize>>,
    pub state: Option<Vec<f64>>,
    pub effect: Option<Vec<f64>>,
    pub seed: u64,
    pub frame: FrameChoice,
    pub order: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTheory {
    kind: String,
    n: Option<usize>,
    d: Option<usize>,
    m: Option<usize>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    theory: RawTheory,
    blocks: Vec<Vec<usize>>,
    state: Option<Vec<f64>>,
    effect: Option<Vec<f64>>,
    seed: Option<u64>,
    frame: Option<FrameChoice>,
    order: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    n: usize,
    values: BTreeMap<String, f64>,
}

fn json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
}

fn theory_from_raw(raw: RawTheory) -> Result<TheoryDescriptor> {
    let (key, size) = match raw.kind.as_str() {
        "classical" => ("d", raw.d),
        "real_symmetric" | "complex_hermitian" | "quaternionic_hermitian" => ("n", raw.n),
        "spin_factor" => ("m", raw.m),
        other => return Err(Error::Descriptor(format!("unsupported kind {other:?}"))),
    };
    let extra = [("n", raw.n), ("d", raw.d), ("m", raw.m)]
        .into_iter()
        .find(|(k, v)| *k != key && v.is_some());
    if let Some((k, _)) = extra {
        return Err(Error::Descriptor(format!(
            "field {k:?} does not apply to kind {:?}; use {key:?}",
            raw.kind
        )));
    }
    let size = size.ok_or_else(|| {
        Error::Descriptor(format!("missing field {key:?} for kind {:?}", raw.kind))
    })?;
    let kind = match raw.kind.as_str() {
        "classical" => AlgebraKind::classical(size),
        "real_symmetric" => AlgebraKind::real_symmetric(size),
        "complex_hermitian" => AlgebraKind::complex_hermitian(size),
        "quaternionic_hermitian" => AlgebraKind::quaternionic_hermitian(size),
        _ => AlgebraKind::spin_factor(size),
    }
    .map_err(|e| Error::Descriptor(format!("field {key:?}: {e}")))?;
    if kind.rank() > MAX_DESCRIPTOR_RANK {
        return Err(Error::Descriptor(format!(
            "field {key:?}: rank {} exceeds {MAX_DESCRIPTOR_RANK}",
            kind.rank()
        )));
    }
    Ok(TheoryDescriptor {
        kind,
        seed: raw.seed,
    })
}

pub fn parse_theory(text: &str) -> Result<TheoryDescriptor> {
    theory_from_raw(json(text)?)
}

pub fn parse_experiment(text: &str) -> Result<ExperimentDescriptor> {
    let raw: RawExperiment = json(text)?;
    let theory = theory_from_raw(raw.theory)?;
    let rank = theory.kind.rank();
    if raw.blocks.is_empty() || raw.blocks.iter().any(Vec::is_empty) {
        return Err(Error::Descriptor(
            "field \"blocks\": slits must be nonempty".into(),
        ));
    }
    let mut seen = vec![false; rank];
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for block in &raw.blocks {
        let mut out = Vec::with_capacity(block.len());
        for &label in block {
            if label == 0 || label > rank {
                return Err(Error::Descriptor(format!(
                    "field \"blocks\": index {label} outside 1..={rank}"
                )));
            }
            if seen[label - 1] {
                return Err(Error::Descriptor(format!(
                    "field \"blocks\": index {label} repeated"
                )));
            }
            seen[label - 1] = true;
            out.push(label - 1);
        }
        blocks.push(out);
    }
    let order = raw.order.unwrap_or(blocks.len());
    if order > blocks.len() {
        return Err(Error::Descriptor(format!(
            "field \"order\": {order} exceeds the {} slits",
            blocks.len()
        )));
    }
    Ok(ExperimentDescriptor {
        seed: raw.seed.or(theory.seed).unwrap_or(0),
        theory,
        blocks,
        state: raw.state,
        effect: raw.effect,
        frame: raw.frame.unwrap_or(FrameChoice::Standard),
        order,
    })
}

pub fn parse_table(text: &str) -> Result<ValueTable> {
    let raw: RawTable = json(text)?;
    if raw.n == 0 || raw.n > interference::MAX_SLITS {
        return Err(Error::Descriptor(format!(
            "field \"n\": {} outside 1..={}",
            raw.n,
            interference::MAX_SLITS
        )));
    }
    let entries = raw
        .values
        .iter()
        .map(|(k, v)| Subset::parse(k, raw.n).map(|s| (s, *v)))
        .collect::<Result<Vec<_>>>()?;
    ValueTable::from_entries(raw.n, entries)
}

/// The frame `e_ii` for matrix kinds, the standard basis for classical
/// kinds and `½(1, ±e₁)` for spin factors.
pub fn standard_frame(kind: AlgebraKind) -> Vec<JordanElement> {
    match kind {
        AlgebraKind::SpinFactor { m } => [1.0, -1.0]
            .iter()
            .map(|s| {
                let mut v = vec![0.0; m];
                v[0] = 0.5 * s;
                JordanElement::from_spin(kind, 0.5, &v).expect("spin frame")
            })
            .collect(),
        _ => (0..kind.rank())
            .map(|i| JordanElement::basis(kind, i))
            .collect(),
    }
}

/// Builds the experiment: frame, state and effect, drawing missing pieces
/// from the descriptor seed.
pub fn build_experiment(desc: &ExperimentDescriptor, tol: f64) -> Result<SlitExperiment> {
    let kind = desc.theory.kind;
    let mut rng = sampling::rng(desc.seed);
    let frame = match desc.frame {
        FrameChoice::Standard => standard_frame(kind),
        FrameChoice::Random => sampling::frame_from_rng(kind, &mut rng),
    };
    let state = match &desc.state {
        Some(c) => State::new(JordanElement::new(kind, c.clone())?, tol)?,
        None => State::unchecked(sampling::random_state(kind, &mut rng)),
    };
    let effect = match &desc.effect {
        Some(c) => Effect::new(JordanElement::new(kind, c.clone())?, tol)?,
        None => Effect::unchecked(sampling::random_effect(kind, &mut rng)),
    };
    SlitExperiment::new(frame, desc.blocks.clone(), state, effect, tol)
}

/// Fixed-point decimal with 12 places; negative zero prints as zero.
pub fn format_value(v: f64) -> String {
    let s = format!("{v:.12}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// TSV report: a header, `subset<TAB>v` rows in canonical order, then
/// `I_k<TAB>value` rows. With no orders only the header is written.
pub fn emit_report(report: &InterferenceReport) -> String {
    let mut out = String::from("subset\tvalue\n");
    if report.orders.is_empty() {
        return out;
    }
    for (s, v) in report.table.entries() {
        out.push_str(&format!("{s}\t{}\n", format_value(v)));
    }
    for (k, v) in report.orders.iter().enumerate() {
        out.push_str(&format!("I_{}\t{}\n", k + 1, format_value(*v)));
    }
    out
}

/// Report for a raw table: `I_1..I_order`, `I_k` over slits `1..=k`.
pub fn table_report(table: &ValueTable, order: usize) -> Result<InterferenceReport> {
    if order > table.order() {
        return Err(Error::Descriptor(format!(
            "order {order} exceeds the table's {} slits",
            table.order()
        )));
    }
    let orders = (1..=order)
        .map(|k| interference::sorkin_i(k, table))
        .collect::<Result<Vec<_>>>()?;
    Ok(InterferenceReport {
        table: table.clone(),
        orders,
        defect_norms: Vec::new(),
    })
}

/// One row of the `verify` table.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: &'static str,
    pub residual: f64,
    pub passed: bool,
}

impl CheckRow {
    fn within(name: &'static str, residual: f64, tol: f64) -> Self {
        CheckRow {
            name,
            residual,
            passed: residual.is_finite() && residual <= tol,
        }
    }
}

const VERIFY_SAMPLES: usize = 100;

fn gaussian_map(kind: AlgebraKind, rng: &mut sampling::Rng) -> LinearMap {
    let dim = kind.dim();
    let data = (0..dim * dim).map(|_| sampling::gaussian(rng)).collect();
    LinearMap::new(kind, Matrix::from_row_major(dim, dim, data)).expect("square map")
}

fn random_states(kind: AlgebraKind, count: usize, rng: &mut sampling::Rng) -> Vec<State> {
    (0..count)
        .map(|_| State::unchecked(sampling::random_state(kind, rng)))
        .collect()
}

/// Runs the invariant suite on one theory. `tol` is the pass threshold for
/// the numerical residuals.
pub fn verify_suite(kind: AlgebraKind, seed: u64, tol: f64) -> Result<Vec<CheckRow>> {
    let system = SystemModel::new(kind)?;
    let d = kind.rank();
    let frame = system.random_frame(seed);
    let mut rng = sampling::rng(seed.wrapping_add(1));
    let work = eja::DEFAULT_TOL;
    let mut rows = Vec::new();

    rows.push(CheckRow::within(
        "frame",
        eja::frame_violation(&frame)?,
        tol,
    ));

    let mut spectral = 0.0_f64;
    for _ in 0..VERIFY_SAMPLES {
        let x = sampling::gaussian_element(kind, &mut rng);
        let sd = eja::spectral_decompose(&x, work)?;
        spectral = spectral.max((&sd.reconstruct() - &x).norm() / x.norm().max(1.0));
    }
    rows.push(CheckRow::within("spectral", spectral, tol));

    let states = random_states(kind, 2 * VERIFY_SAMPLES, &mut rng);
    let mut symmetry = 0.0_f64;
    for pair in states.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let lhs = system::pairing(&a.dagger(), b)?;
        let rhs = system::pairing(&b.dagger(), a)?;
        symmetry = symmetry.max((lhs - rhs).abs());
    }
    rows.push(CheckRow::within("self_duality", symmetry, 1e-12));

    let mut missing = 0usize;
    let mut tested = 0usize;
    while tested < VERIFY_SAMPLES {
        let x = sampling::gaussian_element(kind, &mut rng);
        if eja::cone_contains(&x, work) {
            continue;
        }
        tested += 1;
        match system::self_duality_witness(&x, work)? {
            Some(w) if eja::cone_contains(&w, work) && eja::trace_inner_product(&x, &w)? < 0.0 => {}
            _ => missing += 1,
        }
    }
    rows.push(CheckRow::within("duality_witness", missing as f64, 0.0));

    rows.push(CheckRow::within(
        "projector_lattice",
        projectors::projector_lattice_check(&frame)?.worst(),
        tol,
    ));
    let half: Vec<usize> = (0..d.div_ceil(2)).collect();
    let axioms = projectors::projector_axiom_check(&frame, &half, 20, seed, work)?;
    rows.push(CheckRow::within("projector_axioms", axioms.worst(), tol));
    rows.push(CheckRow::within(
        "purity_preservation",
        projectors::purity_preservation_check(&frame, &half, 50, seed, work)?,
        tol,
    ));

    let mut bounds = 0.0_f64;
    for _ in 0..VERIFY_SAMPLES {
        let x = sampling::gaussian_element(kind, &mut rng);
        let r = adjoint::norm_report(&x)?;
        bounds = bounds
            .max(r.two_norm - r.one_norm)
            .max(r.one_norm - (d as f64).sqrt() * r.two_norm);
    }
    rows.push(CheckRow::within(
        "norm_bounds",
        bounds.max(0.0),
        adjoint::NORM_SLACK,
    ));
    let chi = system.invariant_state();
    rows.push(CheckRow::within(
        "invariant_norm",
        (adjoint::dagger_norm(chi.element()) - 1.0 / (d as f64).sqrt()).abs(),
        1e-12,
    ));

    let perm: Vec<usize> = (0..d).rev().collect();
    let u = adjoint::frame_permutation(&frame, &perm)?;
    let mut fidelity = 0.0_f64;
    for pair in states.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let f = adjoint::dagger_fidelity(a, b)?;
        let range = (-f).max(f - 1.0).max(0.0);
        let same = (adjoint::dagger_fidelity(a, a)? - 1.0).abs();
        let ua = State::unchecked(u.apply(a.element())?);
        let ub = State::unchecked(u.apply(b.element())?);
        let invariance = (adjoint::dagger_fidelity(&ua, &ub)? - f).abs();
        fidelity = fidelity.max(range).max(same).max(invariance);
    }
    for p in &frame[1..] {
        let f = adjoint::dagger_fidelity(
            &State::unchecked(frame[0].clone()),
            &State::unchecked(p.clone()),
        )?;
        fidelity = fidelity.max(f.abs());
    }
    rows.push(CheckRow::within("fidelity", fidelity, 1e-12));

    let a = gaussian_map(kind, &mut rng);
    let b = gaussian_map(kind, &mut rng);
    let laws = adjoint::adjoint_law_check(&a, &b)?;
    let mut reversible = adjoint::reversible_residual(&u)?;
    if kind.is_matrix() {
        reversible = reversible.max(adjoint::reversible_residual(&adjoint::random_conjugation(
            kind, seed,
        )?)?);
    }
    rows.push(CheckRow::within(
        "adjoint_laws",
        laws.involution.max(laws.composition),
        0.0,
    ));
    rows.push(CheckRow::within("reversible_adjoint", reversible, 1e-10));

    let identity_perm: Vec<usize> = (0..d).collect();
    let mix = adjoint::frame_permutation(&frame, &identity_perm)?
        .scale(0.5)
        .add(&u.scale(0.5))?;
    let unital = adjoint::channel_classify(&mix, work, seed)?;
    let sigma = frame[0].clone();
    let non_unital = adjoint::channel_classify(&adjoint::constant_channel(&sigma)?, work, seed)?;
    let consistent = unital.unital
        && unital.dagger_physical
        && unital.max_norm_increase.is_some_and(|v| v <= work)
        && !non_unital.unital
        && !non_unital.dagger_physical;
    rows.push(CheckRow::within(
        "channels",
        if consistent { 0.0 } else { 1.0 },
        0.0,
    ));

    if d >= 3 {
        let blocks = interference::default_blocks(d, 3)?;
        rows.push(CheckRow::within(
            "third_order_defect",
            interference::sorkin_defect_norm(&frame, &blocks, 3)?,
            tol,
        ));
    }
    Ok(rows)
}

/// TSV table for [`verify_suite`].
pub fn emit_checks(rows: &[CheckRow]) -> String {
    let mut out = String::from("check\tresidual\tstatus\n");
    for r in rows {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{}\t{:.3e}\t{status}\n", r.name, r.residual));
    }
    out
}

#[derive(Parser, Debug)]
#[command(
    name = "sharpgpt",
    version,
    about = "Jordan-algebraic GPT models and multi-slit interference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the invariant suite on a theory
    Verify {
        theory: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = eja::DEFAULT_TOL)]
        tol: f64,
    },
    /// Print the value table and I_1..I_n of an experiment
    Interference {
        experiment: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = eja::DEFAULT_TOL)]
        tol: f64,
    },
    /// Search for the largest |I_n| on a theory
    Scan {
        theory: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 30)]
        iters: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = eja::DEFAULT_TOL)]
        tol: f64,
    },
    /// Compute I_n from a value table file
    Table {
        table: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Descriptor(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Descriptor(format!("{}: {e}", path.display())))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    let code = match command {
        Command::Verify { theory, seed, tol } => {
            let desc = in_file(&theory, parse_theory(&read(&theory)?))?;
            let rows = verify_suite(desc.kind, seed.or(desc.seed).unwrap_or(0), tol)?;
            text.push_str(&emit_checks(&rows));
            if rows.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Command::Interference {
            experiment,
            order,
            tol,
        } => {
            let mut desc = in_file(&experiment, parse_experiment(&read(&experiment)?))?;
            if let Some(o) = order {
                desc.order = o;
            }
            let exp = build_experiment(&desc, tol)?;
            text.push_str(&emit_report(&interference::interference_report(
                &exp, desc.order,
            )?));
            EXIT_OK
        }
        Command::Scan {
            theory,
            order,
            trials,
            iters,
            seed,
            tol,
        } => {
            let desc = in_file(&theory, parse_theory(&read(&theory)?))?;
            let seed = seed.or(desc.seed).unwrap_or(0);
            let search =
                interference::maximize_interference(desc.kind, order, trials, iters, seed)?;
            text.push_str("key\tvalue\n");
            text.push_str(&format!("kind\t{}\n", desc.kind));
            text.push_str(&format!("order\t{order}\n"));
            text.push_str(&format!("trials\t{trials}\n"));
            text.push_str(&format!("seed\t{seed}\n"));
            text.push_str(&format!("best\t{}\n", format_value(search.best)));
            text.push_str(&format!("I_{order}\t{}\n", format_value(search.value)));
            if order >= 3 && search.best > tol {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Command::Table { table, order } => {
            let values = in_file(&table, parse_table(&read(&table)?))?;
            let order = order.unwrap_or(values.order());
            text.push_str(&emit_report(&table_report(&values, order)?));
            EXIT_OK
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Descriptor(format!("writing output: {e}")))?;
    Ok(code)
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code: 0 all-pass, 1 tolerance violation, 2 input error.
pub fn run_command<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                return EXIT_INPUT;
            }
            let _ = out.write_all(rendered.as_bytes());
            return EXIT_OK;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_examples() {
        let t = parse_theory(r#"{"kind":"complex_hermitian","n":3}"#).unwrap();
        assert_eq!(t.kind, AlgebraKind::complex_hermitian(3).unwrap());
        let t = parse_theory(r#"{"kind":"classical","d":4}"#).unwrap();
        assert_eq!(t.kind, AlgebraKind::classical(4).unwrap());
        let e = parse_theory(r#"{"kind":"albert"}"#).unwrap_err();
        assert!(e.to_string().contains("unsupported kind"), "{e}");
    }

    #[test]
    fn theory_schema_errors() {
        let e = parse_theory("{\"kind\":\"classical\",\n\"d\":4,\"colour\":1}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("colour") && msg.contains("line 2"), "{msg}");
        assert!(parse_theory(r#"{"kind":"classical","n":4}"#).is_err());
        assert!(parse_theory(r#"{"kind":"real_symmetric","n":9}"#).is_err());
        assert!(parse_theory(r#"{"kind":"classical","d":9}"#).is_err());
        assert!(parse_theory(r#"{"kind":"spin_factor","m":16}"#).is_err());
        assert!(parse_theory(r#"{"kind":"spin_factor","m":15,"seed":3}"#).is_ok());
    }

    #[test]
    fn experiment_validation() {
        let ok = r#"{"theory":{"kind":"classical","d":3},"blocks":[[1],[2,3]]}"#;
        let d = parse_experiment(ok).unwrap();
        assert_eq!(d.blocks, vec![vec![0], vec![1, 2]]);
        assert_eq!(d.order, 2);
        let overlap = r#"{"theory":{"kind":"classical","d":3},"blocks":[[1],[1,3]]}"#;
        assert!(parse_experiment(overlap).is_err());
        let range = r#"{"theory":{"kind":"classical","d":3},"blocks":[[0]]}"#;
        assert!(parse_experiment(range).is_err());
        let bad_state =
            r#"{"theory":{"kind":"classical","d":2},"blocks":[[1],[2]],"state":[2.0,0.0]}"#;
        let desc = parse_experiment(bad_state).unwrap();
        assert!(build_experiment(&desc, 1e-9).is_err());
    }

    #[test]
    fn table_examples() {
        let t = parse_table(r#"{"n":2,"values":{"1":0.25,"2":0.25,"12":1.0}}"#).unwrap();
        let r = table_report(&t, 2).unwrap();
        assert_eq!(
            emit_report(&r),
            "subset\tvalue\n1\t0.250000000000\n2\t0.250000000000\n12\t1.000000000000\nI_1\t0.250000000000\nI_2\t0.500000000000\n"
        );
        assert_eq!(
            emit_report(&table_report(&t, 0).unwrap()),
            "subset\tvalue\n"
        );
        assert!(parse_table(r#"{"n":2,"values":{"1":0.25,"12":1.0}}"#).is_err());
        assert!(parse_table(r#"{"n":2,"values":{"1":0.25,"2":0.1,"21":1.0}}"#).is_err());
    }

    #[test]
    fn additive_table_emits_zero() {
        let t = ValueTable::from_fn(3, |s| Ok(s.labels().iter().map(|&l| l as f64 * 0.1).sum()))
            .unwrap();
        let text = emit_report(&table_report(&t, 3).unwrap());
        assert!(text.ends_with("I_3\t0.000000000000\n"), "{text}");
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(format_value(-1e-17), "0.000000000000");
        assert_eq!(format_value(-0.5), "-0.500000000000");
    }

    #[test]
    fn standard_frames_are_frames() {
        for kind in [
            AlgebraKind::classical(3).unwrap(),
            AlgebraKind::quaternionic_hermitian(3).unwrap(),
            AlgebraKind::spin_factor(4).unwrap(),
        ] {
            assert!(eja::frame_violation(&standard_frame(kind)).unwrap() < 1e-14);
        }
    }

    #[test]
    fn verify_passes_on_catalog() {
        for kind in [
            AlgebraKind::classical(3).unwrap(),
            AlgebraKind::real_symmetric(3).unwrap(),
            AlgebraKind::complex_hermitian(2).unwrap(),
            AlgebraKind::quaternionic_hermitian(2).unwrap(),
            AlgebraKind::spin_factor(3).unwrap(),
        ] {
            let rows = verify_suite(kind, 0, 1e-9).unwrap();
            for r in &rows {
                assert!(r.passed, "{kind}: {r:?}");
            }
        }
    }

    #[test]
    fn exit_code_for_bad_arguments() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run_command(["sharpgpt", "frobnicate"], &mut out, &mut err),
            EXIT_INPUT
        );
        let code = run_command(
            ["sharpgpt", "table", "/nonexistent/table.json"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_INPUT);
        assert!(String::from_utf8(err).unwrap().contains("nonexistent"));
    }
}
