//! `polyqt`: command-line front end.
//!
//! Results go to stdout as JSON (or readable text with `--pretty`). Exit
//! status 0 means success with every certificate re-verified, 1 a domain
//! error (a JSON object with a machine-readable `error` code goes to
//! stderr), and 2 a usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyqt::algebra::{poly_factor, FieldSpec, MobiusMatrix, Poly};
use polyqt::combinat::{homogeneous_partition, realize_majorization, replay, stack_factors, StackingLayout};
use polyqt::io::{
    certificate_to_json, matpoly_from_json, matpoly_to_json, opscript_to_json, parse_field, poly_to_json,
    render_ascii, render_svg, spectral_from_json, OpScript,
};
use polyqt::matpoly::MatPoly;
use polyqt::quasitri::{
    quasi_triangularize_with, realize_strictly_regular, realize_with_infinity, reduce_offdiagonal, BlockStructure,
    QuasiTriResult,
};
use polyqt::smith::{extract_spectral_data, smith_form, spectrally_equivalent, SpectralData};
use polyqt::transfer::drive_diagonal;
use polyqt::triangcheck::{check_sufficient, check_two_degree, TriangReport};
use polyqt::Error;

#[derive(Parser, Debug)]
#[command(name = "polyqt", version, about = "Smith forms, spectral data and quasi-triangular realizations of matrix polynomials")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized factorization over GF(p).
    #[arg(long, global = true, env = "POLYQT_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith form U·P·V = S of a matrix polynomial.
    Smith {
        #[arg(long)]
        input: PathBuf,
        /// Irreducible hint (needed over Q), e.g. "x^2 - 2".
        #[arg(long = "hint")]
        hints: Vec<String>,
    },
    /// Factor a univariate polynomial over GF(p).
    Factor {
        #[arg(long, default_value = "GF(2)")]
        field: String,
        /// Polynomial expression, e.g. "1 + x + x^3".
        #[arg(long)]
        poly: String,
    },
    /// Realize spectral data by a k-quasi-triangular matrix polynomial.
    Realize {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        size: usize,
        /// Write the recomputed certificate (certificate.v1) here.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Quasi-triangularize a regular matrix polynomial, keeping size, grade,
    /// degree and complete spectral data.
    Quasitri {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "hint")]
        hints: Vec<String>,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Compare the complete spectral data of a matrix polynomial with that of
    /// another one (`--b`) or with given spectral data (`--data`).
    VerifyEquiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long, conflicts_with = "data", required_unless_present = "data")]
        b: Option<PathBuf>,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Apply the Möbius transformation of [[a,b],[c,d]].
    Mobius {
        #[arg(long)]
        input: PathBuf,
        /// Four entries a,b,c,d.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        matrix: Vec<String>,
    },
    /// Decide whether a degree-d triangularization is guaranteed.
    Triangularizable {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Write the triangular witness (matpoly.v1) here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Split integers into groups of size ≤ k each averaging mu.
    Partition {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<i64>,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
    },
    /// Stack the irreducible factors of spectral data into columns.
    Stack {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        size: usize,
        /// Target degree, drawn as a dashed line.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum)]
        diagram: Option<Diagram>,
    },
    /// Reduce off-diagonal blocks below the degrees of the diagonal blocks.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        /// Block sizes, e.g. 2,2,2 (default: all 1).
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
    },
    /// Spread the Smith form of spectral data onto its stacked layout.
    Undiagonalize {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        size: usize,
    },
    /// Interchange/compression script turning one natural vector into another.
    Majorize {
        #[arg(long, value_delimiter = ',')]
        from: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        to: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    /// Two-degree characterization when its hypotheses hold, else the sufficient test.
    Auto,
    TwoDegree,
    Sufficient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Diagram {
    Ascii,
    Svg,
}

/// Failure of a subcommand: a stable code plus a message.
struct Failure {
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: "IoError",
        message: format!("{}: {e}", path.display()),
    }
}

fn verification_failure(what: &str) -> Failure {
    Failure {
        code: "VerificationFailed",
        message: format!("certificate check failed: {what}"),
    }
}

type CmdResult = Result<Output, Failure>;

/// JSON payload plus an optional readable rendering.
struct Output {
    json: Value,
    text: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None }
    }

    fn with_text(json: Value, text: String) -> Self {
        Output { json, text: Some(text) }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::from(Error::SchemaError {
            path: "$".into(),
            msg: format!("{}: invalid JSON: {e}", path.display()),
        })
    })
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn read_matpoly(path: &Path) -> Result<MatPoly, Failure> {
    Ok(matpoly_from_json(&read_json(path)?)?)
}

fn read_spectral(path: &Path, seed: u64) -> Result<SpectralData, Failure> {
    Ok(spectral_from_json(&read_json(path)?, &[], seed)?)
}

fn parse_hints(field: FieldSpec, hints: &[String]) -> Result<Vec<Poly>, Failure> {
    hints
        .iter()
        .map(|h| Poly::parse(field, h).map_err(Failure::from))
        .collect()
}

fn run(cli: &Cli) -> CmdResult {
    let seed = cli.seed;
    match &cli.command {
        Command::Smith { input, hints } => cmd_smith(input, hints, seed),
        Command::Factor { field, poly } => cmd_factor(field, poly, seed),
        Command::Realize {
            data,
            degree,
            size,
            emit_certificate,
        } => cmd_realize(data, *degree, *size, emit_certificate.as_deref(), seed),
        Command::Quasitri {
            input,
            hints,
            emit_certificate,
        } => cmd_quasitri(input, hints, emit_certificate.as_deref(), seed),
        Command::VerifyEquiv { a, b, data } => cmd_verify(a, b.as_deref(), data.as_deref(), seed),
        Command::Mobius { input, matrix } => cmd_mobius(input, matrix),
        Command::Triangularizable {
            data,
            degree,
            size,
            mode,
            witness,
        } => cmd_triang(data, *degree, *size, *mode, witness.as_deref(), seed),
        Command::Partition { values, k, mu } => cmd_partition(values, *k, *mu),
        Command::Stack {
            data,
            size,
            degree,
            diagram,
        } => cmd_stack(data, *size, *degree, *diagram, seed),
        Command::Reduce { input, blocks } => cmd_reduce(input, blocks),
        Command::Undiagonalize { data, size } => cmd_undiagonalize(data, *size, seed),
        Command::Majorize { from, to } => cmd_majorize(from, to),
    }
}

fn cmd_smith(input: &Path, hints: &[String], seed: u64) -> CmdResult {
    let p = read_matpoly(input)?;
    let hints = parse_hints(p.field(), hints)?;
    let dec = smith_form(&p);
    if dec.u.mul(&p).mul(&dec.v) != dec.s
        || !dec.u.is_unimodular().map_err(Failure::from)?
        || !dec.v.is_unimodular().map_err(Failure::from)?
    {
        return Err(verification_failure("U*P*V = S"));
    }
    let diag = dec.diagonal();
    let mut out = json!({
        "kind": "smith",
        "invariants": diag.iter().map(poly_to_json).collect::<Vec<_>>(),
        "s": matpoly_to_json(&dec.s),
        "u": matpoly_to_json(&dec.u),
        "v": matpoly_to_json(&dec.v),
    });
    if p.is_regular() {
        let data = extract_spectral_data(&p, &hints, seed)?;
        out["spectral_data"] = polyqt::io::spectral_to_json(&data);
    }
    let text = diag
        .iter()
        .enumerate()
        .map(|(i, s)| format!("s{} = {}", i + 1, s.to_text()))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::with_text(out, text))
}

fn cmd_factor(field: &str, poly: &str, seed: u64) -> CmdResult {
    let f = parse_field(field, "--field")?;
    let a = Poly::parse(f, poly)?;
    let fac = poly_factor(&a, seed)?;
    if fac.expand(f) != a {
        return Err(verification_failure("product of factors"));
    }
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(p, e)| json!({ "poly": poly_to_json(p), "text": p.to_text(), "multiplicity": e }))
        .collect();
    let text = std::iter::once(format!("unit {}", f.fmt_scalar(&fac.unit)))
        .chain(fac.factors.iter().map(|(p, e)| format!("({})^{e}", p.to_text())))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::with_text(
        json!({ "kind": "factorization", "field": f.to_string(), "unit": f.fmt_scalar(&fac.unit), "factors": factors }),
        text,
    ))
}

fn result_output(r: &QuasiTriResult, cert_path: Option<&Path>) -> CmdResult {
    let cert = certificate_to_json(&r.certificate, &r.blocks);
    if let Some(path) = cert_path {
        write_json(path, &cert)?;
    }
    let text = format!(
        "blocks {:?}, degree {:?}, grade {}\n{}",
        r.blocks.sizes,
        r.q.degree(),
        r.q.grade(),
        r.q
    );
    Ok(Output::with_text(
        json!({
            "kind": "quasitri",
            "matrix": matpoly_to_json(&r.q),
            "blocks": r.blocks.sizes,
            "certificate": cert,
        }),
        text,
    ))
}

fn cmd_realize(data: &Path, degree: usize, size: usize, cert: Option<&Path>, seed: u64) -> CmdResult {
    let data = read_spectral(data, seed)?;
    let r = if data.infinite.iter().any(|&a| a > 0) {
        realize_with_infinity(&data, degree, size)?
    } else {
        realize_strictly_regular(&data, degree, size)?
    };
    let want = data.resized(size, degree)?;
    let hints: Vec<Poly> = want.finite.keys().cloned().collect();
    let check = extract_spectral_data(&r.q, &hints, seed)?;
    if !check.same_structure(&want) || !r.q.is_block_upper_triangular(&r.blocks.sizes) {
        return Err(verification_failure("realized spectral data"));
    }
    result_output(&r, cert)
}

fn cmd_quasitri(input: &Path, hints: &[String], cert: Option<&Path>, seed: u64) -> CmdResult {
    let p = read_matpoly(input)?;
    let hints = parse_hints(p.field(), hints)?;
    let r = quasi_triangularize_with(&p, &hints, seed)?;
    if !spectrally_equivalent(&p, &r.q)? || r.q.grade() != p.grade() || r.q.degree() != p.degree() {
        return Err(verification_failure("spectral equivalence with the input"));
    }
    result_output(&r, cert)
}

fn cmd_verify(a: &Path, b: Option<&Path>, data: Option<&Path>, seed: u64) -> CmdResult {
    let p = read_matpoly(a)?;
    let eq = match (b, data) {
        (Some(b), _) => spectrally_equivalent(&p, &read_matpoly(b)?)?,
        (None, Some(d)) => {
            let want = read_spectral(d, seed)?;
            let hints: Vec<Poly> = want.finite.keys().cloned().collect();
            extract_spectral_data(&p, &hints, seed)?.same_structure(&want)
        }
        (None, None) => unreachable!("clap requires one of --b/--data"),
    };
    Ok(Output::with_text(
        json!({ "kind": "equivalence", "equivalent": eq }),
        format!("equivalent: {eq}"),
    ))
}

fn cmd_mobius(input: &Path, matrix: &[String]) -> CmdResult {
    let p = read_matpoly(input)?;
    let f = p.field();
    let s: Vec<_> = matrix
        .iter()
        .map(|x| f.parse_scalar(x))
        .collect::<polyqt::Result<_>>()?;
    let a = MobiusMatrix::new(f, s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone())?;
    let q = p.mobius(&a)?;
    let back = q.mobius(&a.inverse()?)?;
    if back != p {
        return Err(verification_failure("inverse transformation round trip"));
    }
    let text = q.to_string();
    Ok(Output::with_text(matpoly_to_json(&q), text))
}

fn report_json(r: &TriangReport) -> Value {
    json!({
        "kind": "triangularizability",
        "verdict": r.verdict.to_string(),
        "condition": r.condition,
        "unit_degree": r.unit,
        "counts": r.counts,
        "gap": r.gap.entries,
        "witness": r.witness.is_some(),
    })
}

fn cmd_triang(data: &Path, d: usize, n: usize, mode: Mode, witness: Option<&Path>, seed: u64) -> CmdResult {
    let data = read_spectral(data, seed)?;
    let report = match mode {
        Mode::TwoDegree => check_two_degree(&data, d, n)?,
        Mode::Sufficient => check_sufficient(&data, d, n)?,
        Mode::Auto => match check_two_degree(&data, d, n) {
            Err(Error::HypothesisViolated(_)) => check_sufficient(&data, d, n)?,
            other => other?,
        },
    };
    if let Some(w) = &report.witness {
        let want = data.resized(n, d)?;
        let ok = w.is_upper_triangular()
            && (0..n).all(|i| w.get(i, i).degree() == Some(d))
            && polyqt::smith::invariant_polynomials(w) == want.invariant_list();
        if !ok {
            return Err(verification_failure("triangular witness"));
        }
        if let Some(path) = witness {
            write_json(path, &matpoly_to_json(w))?;
        }
    }
    let text = format!("{}: {}", report.verdict, report.condition);
    Ok(Output::with_text(report_json(&report), text))
}

fn cmd_partition(values: &[i64], k: usize, mu: i64) -> CmdResult {
    let p = homogeneous_partition(values, k, mu)?;
    let groups: Vec<Vec<i64>> = p.groups.iter().map(|g| g.iter().map(|&i| values[i]).collect()).collect();
    if groups.iter().any(|g| g.len() > k.max(1) || g.iter().sum::<i64>() != mu * g.len() as i64) {
        return Err(verification_failure("group sizes and averages"));
    }
    let text = groups
        .iter()
        .map(|g| g.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(" | ");
    Ok(Output::with_text(
        json!({
            "kind": "partition",
            "groups": p.groups,
            "values": groups,
            "permutation": p.permutation(),
        }),
        text,
    ))
}

fn data_factors(data: &SpectralData) -> Vec<Poly> {
    let mut out = Vec::new();
    for (chi, pm) in &data.finite {
        for _ in 0..pm.iter().sum::<usize>() {
            out.push(chi.clone());
        }
    }
    out
}

fn layout_json(l: &StackingLayout) -> Value {
    json!({
        "kind": "stacking",
        "field": l.field.to_string(),
        "columns": l.columns.iter().map(|c| c.iter().map(poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degrees": l.degrees,
        "families": l.families.iter().map(|(d, c)| json!({ "degree": d, "counts": c })).collect::<Vec<_>>(),
    })
}

fn cmd_stack(data: &Path, n: usize, degree: Option<usize>, diagram: Option<Diagram>, seed: u64) -> CmdResult {
    let data = read_spectral(data, seed)?;
    if n == 0 {
        return Err(Error::TooSmall { n, m: 1 }.into());
    }
    let layout = stack_factors(data.field, &data_factors(&data), n);
    let json = layout_json(&layout);
    Ok(match diagram {
        Some(Diagram::Ascii) => Output::with_text(json, render_ascii(&layout, degree)),
        Some(Diagram::Svg) => Output::with_text(json, render_svg(&layout, degree)),
        None => {
            let text = render_ascii(&layout, degree);
            Output::with_text(json, text)
        }
    })
    .map(|mut o| {
        if diagram.is_some() {
            // The diagram is the requested output.
            o.json = Value::String(o.text.clone().unwrap_or_default());
        }
        o
    })
}

fn cmd_reduce(input: &Path, blocks: &[usize]) -> CmdResult {
    let t = read_matpoly(input)?;
    let blocks = if blocks.is_empty() {
        BlockStructure::scalar(t.rows())
    } else {
        BlockStructure::new(blocks.to_vec())
    };
    let r = reduce_offdiagonal(&t, &blocks)?;
    if polyqt::smith::invariant_polynomials(&r) != polyqt::smith::invariant_polynomials(&t) {
        return Err(verification_failure("Smith form preserved"));
    }
    let text = r.to_string();
    Ok(Output::with_text(matpoly_to_json(&r), text))
}

fn cmd_undiagonalize(data: &Path, n: usize, seed: u64) -> CmdResult {
    let data = read_spectral(data, seed)?.resized(n, 0)?;
    let s = MatPoly::diag(data.field, &data.invariant_list());
    let layout = stack_factors(data.field, &data_factors(&data), n);
    let t = drive_diagonal(&s, &layout)?;
    if polyqt::smith::invariant_polynomials(&t) != data.invariant_list() {
        return Err(verification_failure("Smith form preserved"));
    }
    let text = t.to_string();
    Ok(Output::with_text(matpoly_to_json(&t), text))
}

fn cmd_majorize(from: &[usize], to: &[usize]) -> CmdResult {
    let ops = realize_majorization(from, to)?;
    if replay(from, &ops)? != to {
        return Err(verification_failure("script replay"));
    }
    let script = OpScript {
        start: from.to_vec(),
        ops,
    };
    Ok(Output::json(opscript_to_json(&script)))
}

fn main() -> ExitCode {
    let parsed = Cli::try_parse().and_then(|cli| match &cli.command {
        Command::Mobius { matrix, .. } if matrix.len() != 4 => Err(Cli::command().error(
            clap::error::ErrorKind::WrongNumberOfValues,
            format!("--matrix takes exactly 4 entries a,b,c,d (got {})", matrix.len()),
        )),
        _ => Ok(cli),
    });
    let cli = match parsed {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let rendered = match (&out.text, cli.pretty, &out.json) {
                (Some(t), true, _) => format!("{}\n", t.trim_end()),
                (_, _, Value::String(s)) => s.clone(),
                (_, true, v) => serde_json::to_string_pretty(v).expect("serializable") + "\n",
                (_, false, v) => format!("{v}\n"),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.code, "message": f.message }));
            ExitCode::from(1)
        }
    }
}
