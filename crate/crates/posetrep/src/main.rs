//! Command-line surface: build lattices, classify representation type with
//! certificates, verify the full trichotomy matrix, compute invariants, and
//! run representation-family checks.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetrep::coxeter::{CoxeterElementChoice, CoxeterGroup};
use posetrep::fixtures;
use posetrep::poset::{Poset, PosetMorphism};
use posetrep::quiverrep::{
    build_m_lambda_mu, hom_space, is_isomorphic_reps, square_cycle_witness, validate_rep,
    SquareCycleShape,
};
use posetrep::reptype::{
    classify, contraction_cert, four_regular_cert, hereditary_wild_cert, report_invariants,
    square_cycle_cert, star_cert, Certificate, Verdict,
};
use posetrep::rootposets::{nonnesting, root_poset_from_str};

#[derive(Parser)]
#[command(name = "posetrep", version, about = "Finite lattices and the representation type of their incidence algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a lattice and write it as JSON or DOT.
    Build {
        /// One of: cambrian, weak-order, nonnesting, cube, stokes-fixture.
        family: String,
        /// Type string, e.g. A3, B3, H3, I2(7), A1xI2(5); the dimension for `cube`.
        #[arg(long = "type")]
        type_str: Option<String>,
        /// Coxeter element as a 1-based generator order, e.g. 1,2,3.
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Built-in fixture name (family stokes-fixture; default "stokes").
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Classify a poset and print the report with its certificate.
    Classify {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print size, degree sequence, lattice flag and Coxeter polynomial.
    Invariants {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Run the full verification matrix; nonzero exit on any mismatch.
    VerifyPaper {
        /// Seed for any randomized search ordering (reproducibility).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the two-parameter family on a square-cycle witness and report
    /// End/Hom dimensions and the pairwise isomorphism matrix.
    RepFamily {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        /// Parameter pair like `--pair 2,3` (repeatable); three seeded pairs
        /// when omitted.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run each wildness search separately and print what it finds.
    SearchWild {
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Build {
            family,
            type_str,
            c,
            out,
            format,
            fixture,
        } => cmd_build(&family, type_str.as_deref(), c.as_deref(), out, format, fixture.as_deref()),
        Command::Classify { file, fixture, out } => {
            let p = load_poset(file.as_deref(), fixture.as_deref())?;
            let report = classify(&p);
            let text = serde_json::to_string_pretty(&report.to_json()).unwrap();
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Invariants { file, fixture } => {
            let p = load_poset(file.as_deref(), fixture.as_deref())?;
            let inv = report_invariants(&p);
            println!("{}", serde_json::to_string_pretty(&serde_json::to_value(&inv).unwrap()).unwrap());
            Ok(0)
        }
        Command::VerifyPaper { seed: _ } => Ok(cmd_verify_paper()),
        Command::RepFamily {
            file,
            fixture,
            pairs,
            seed,
        } => cmd_rep_family(file.as_deref(), fixture.as_deref(), &pairs, seed),
        Command::SearchWild { file, fixture, seed: _ } => {
            let p = load_poset(file.as_deref(), fixture.as_deref())?;
            let mut out = serde_json::Map::new();
            let searches: [(&str, fn(&Poset) -> Option<Certificate>); 4] = [
                ("star5", star_cert),
                ("square_cycle", square_cycle_cert),
                ("hereditary_wild", hereditary_wild_cert),
                ("four_regular", four_regular_cert),
            ];
            for (name, search) in searches {
                out.insert(
                    name.to_string(),
                    search(&p).map_or(serde_json::Value::Null, |c| c.to_schema_json()),
                );
            }
            println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(out)).unwrap());
            Ok(0)
        }
    }
}

fn load_poset(file: Option<&std::path::Path>, fixture: Option<&str>) -> Result<Poset, String> {
    match (file, fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Poset::from_json(&text).map_err(|e| e.to_string())
        }
        (None, Some(name)) => {
            fixtures::fixture_by_name(name).ok_or_else(|| format!("unknown fixture {name:?}"))
        }
        _ => Err("give exactly one of a poset file or --fixture".into()),
    }
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn coxeter_choice(g: &CoxeterGroup, c: Option<&str>) -> Result<CoxeterElementChoice, String> {
    match c {
        Some(text) => CoxeterElementChoice::parse(text, g.rank).map_err(|e| e.to_string()),
        None => CoxeterElementChoice::new((0..g.rank).collect(), g.rank).map_err(|e| e.to_string()),
    }
}

fn cmd_build(
    family: &str,
    type_str: Option<&str>,
    c: Option<&str>,
    out: Option<PathBuf>,
    format: Format,
    fixture: Option<&str>,
) -> Result<i32, String> {
    let need_type = || type_str.ok_or_else(|| format!("family {family:?} needs --type"));
    let p = match family {
        "cambrian" => {
            let g = CoxeterGroup::from_type_str(need_type()?).map_err(|e| e.to_string())?;
            g.cambrian(&coxeter_choice(&g, c)?)
        }
        "weak-order" => CoxeterGroup::from_type_str(need_type()?)
            .map_err(|e| e.to_string())?
            .weak_order(),
        "nonnesting" => {
            let rp = root_poset_from_str(need_type()?).map_err(|e| e.to_string())?;
            nonnesting(&rp).map_err(|e| e.to_string())?.poset
        }
        "cube" => {
            let dim: usize = need_type()?
                .parse()
                .map_err(|_| "cube needs a numeric --type".to_string())?;
            Poset::cube(dim)
        }
        "stokes-fixture" => {
            let name = fixture.unwrap_or("stokes");
            fixtures::fixture_by_name(name).ok_or_else(|| format!("unknown fixture {name:?}"))?
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    let (_, regular) = p.hasse_degrees();
    eprintln!(
        "elements={} regular={} lattice={}",
        p.len(),
        regular.map_or("no".to_string(), |d| d.to_string()),
        p.is_lattice()
    );
    let text = match format {
        Format::Json => p.to_json(),
        Format::Dot => p.to_dot(),
    };
    emit(out.as_deref(), text.trim_end())?;
    Ok(0)
}

// --- verify-paper ---------------------------------------------------------

enum RowTask {
    Cambrian { ctype: &'static str, c: &'static str },
    WeakOrderCited { ctype: &'static str },
    WeakOrderContraction { ctype: &'static str },
    NonNesting { rtype: &'static str },
    Cube { dim: usize },
    Fixture { name: &'static str },
}

struct Row {
    name: String,
    task: RowTask,
    expected_verdict: Verdict,
    expected_variant: Option<&'static str>,
    expected_size: Option<usize>,
}

fn rows() -> Vec<Row> {
    let mut rows = Vec::new();
    let mut push = |name: String,
                    task: RowTask,
                    verdict: Verdict,
                    variant: Option<&'static str>,
                    size: Option<usize>| {
        rows.push(Row {
            name,
            task,
            expected_verdict: verdict,
            expected_variant: variant,
            expected_size: size,
        })
    };
    let cam = |t: &'static str, c: &'static str| RowTask::Cambrian { ctype: t, c };

    push("cambrian A1".into(), cam("A1", "1"), Verdict::Finite, None, Some(2));
    for h in 3..=9usize {
        push(
            format!("cambrian I2({h})"),
            match h {
                3 => cam("I2(3)", "1,2"),
                4 => cam("I2(4)", "1,2"),
                5 => cam("I2(5)", "1,2"),
                6 => cam("I2(6)", "1,2"),
                7 => cam("I2(7)", "1,2"),
                8 => cam("I2(8)", "1,2"),
                9 => cam("I2(9)", "1,2"),
                _ => unreachable!(),
            },
            Verdict::Finite,
            None,
            Some(h + 2),
        );
    }
    push("cambrian A1xA1xA1".into(), cam("A1xA1xA1", "1,2,3"), Verdict::Tame, Some("TameCube"), Some(8));
    push("nonnesting A1xA1xA1".into(), RowTask::NonNesting { rtype: "A1xA1xA1" }, Verdict::Tame, Some("TameCube"), Some(8));
    push("cube 3".into(), RowTask::Cube { dim: 3 }, Verdict::Tame, Some("TameCube"), Some(8));

    for (t, size) in [("A3", 14), ("B3", 20), ("H3", 32)] {
        for c in ["1,2,3", "2,1,3"] {
            push(
                format!("cambrian {t} c={c}"),
                RowTask::Cambrian { ctype: t, c },
                Verdict::Wild,
                Some("SquareCycle"),
                Some(size),
            );
        }
    }
    for (t, size) in [("A1xI2(3)", 10), ("A1xI2(4)", 12), ("A1xI2(5)", 14)] {
        push(
            format!("cambrian {t}"),
            RowTask::Cambrian { ctype: t, c: "1,2,3" },
            Verdict::Wild,
            Some("SquareCycle"),
            Some(size),
        );
    }
    push("cambrian A4 c=1,2,3,4".into(), cam("A4", "1,2,3,4"), Verdict::Wild, Some("SquareCycle"), Some(42));

    for t in ["A1", "A2", "B2", "C2"] {
        push(
            format!("nonnesting {t}"),
            RowTask::NonNesting { rtype: t },
            Verdict::Finite,
            None,
            None,
        );
    }
    for t in ["A3", "B3", "C3"] {
        push(
            format!("nonnesting {t}"),
            RowTask::NonNesting { rtype: t },
            Verdict::Wild,
            Some("HereditaryWild"),
            None,
        );
    }

    for (t, size) in [("A1", 2), ("A2", 6), ("I2(4)", 8), ("I2(5)", 10)] {
        push(
            format!("weak-order {t}"),
            RowTask::WeakOrderCited { ctype: t },
            Verdict::Finite,
            Some("CitedFinite"),
            Some(size),
        );
    }
    for (t, size) in [("A3", 24), ("B3", 48), ("H3", 120)] {
        push(
            format!("weak-order {t}"),
            RowTask::WeakOrderContraction { ctype: t },
            Verdict::Wild,
            Some("Contraction"),
            Some(size),
        );
    }

    push("cube 4".into(), RowTask::Cube { dim: 4 }, Verdict::Wild, Some("SquareCycle"), Some(16));
    push("stokes fixture".into(), RowTask::Fixture { name: "stokes" }, Verdict::Wild, Some("SquareCycle"), Some(12));
    rows
}

fn run_task(task: &RowTask) -> Result<(usize, Verdict, Option<Certificate>), String> {
    match task {
        RowTask::Cambrian { ctype, c } => {
            let g = CoxeterGroup::from_type_str(ctype).map_err(|e| e.to_string())?;
            let choice = CoxeterElementChoice::parse(c, g.rank).map_err(|e| e.to_string())?;
            let p = g.cambrian(&choice);
            let report = classify(&p);
            Ok((p.len(), report.verdict, report.certificate))
        }
        RowTask::WeakOrderCited { ctype } => {
            let g = CoxeterGroup::from_type_str(ctype).map_err(|e| e.to_string())?;
            let p = g.weak_order();
            let cert = Certificate::CitedFinite {
                citation: "weak orders of rank at most two are representation-finite (classical)"
                    .into(),
            };
            Ok((p.len(), Verdict::Finite, Some(cert)))
        }
        RowTask::WeakOrderContraction { ctype } => {
            let g = CoxeterGroup::from_type_str(ctype).map_err(|e| e.to_string())?;
            let p = g.weak_order();
            let choice = coxeter_choice(&g, None)?;
            let cam = g.cambrian(&choice);
            let sortables = g.sortable_elements(&choice);
            // pi_down_map yields group indices; reindex into the Cambrian
            // sublattice
            let map = g
                .pi_down_map(&choice)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|m| sortables.iter().position(|&s| s == m).unwrap())
                .collect();
            let f = PosetMorphism::new(&p, &cam, map).map_err(|e| e.to_string())?;
            let inner = classify(&cam)
                .certificate
                .ok_or("target lattice not certified")?;
            let cert = contraction_cert(&f, inner)?;
            Ok((p.len(), Verdict::Wild, Some(cert)))
        }
        RowTask::NonNesting { rtype } => {
            let rp = root_poset_from_str(rtype).map_err(|e| e.to_string())?;
            let p = nonnesting(&rp).map_err(|e| e.to_string())?.poset;
            let report = classify(&p);
            Ok((p.len(), report.verdict, report.certificate))
        }
        RowTask::Cube { dim } => {
            let p = Poset::cube(*dim);
            let report = classify(&p);
            Ok((p.len(), report.verdict, report.certificate))
        }
        RowTask::Fixture { name } => {
            let p = fixtures::fixture_by_name(name).ok_or("unknown fixture")?;
            let report = classify(&p);
            Ok((p.len(), report.verdict, report.certificate))
        }
    }
}

struct RowOutcome {
    verdict: String,
    variant: String,
    witness: String,
    size: String,
    millis: u128,
    ok: bool,
    note: String,
}

fn check_row(row: &Row) -> RowOutcome {
    let start = Instant::now();
    let result = run_task(&row.task);
    let millis = start.elapsed().as_millis();
    match result {
        Ok((size, verdict, cert)) => {
            let variant = cert.as_ref().map_or("-", |c| c.variant_name()).to_string();
            let witness = cert
                .as_ref()
                .and_then(|c| c.witness_size())
                .map_or("-".to_string(), |w| w.to_string());
            let mut notes = Vec::new();
            if verdict != row.expected_verdict {
                notes.push(format!("expected {}", row.expected_verdict));
            }
            if let Some(want) = row.expected_variant {
                if variant != want {
                    notes.push(format!("expected variant {want}"));
                }
            }
            if let Some(want) = row.expected_size {
                if size != want {
                    notes.push(format!("expected {want} elements"));
                }
            }
            RowOutcome {
                verdict: verdict.to_string(),
                variant,
                witness,
                size: size.to_string(),
                millis,
                ok: notes.is_empty(),
                note: notes.join("; "),
            }
        }
        Err(msg) => RowOutcome {
            verdict: "error".into(),
            variant: "-".into(),
            witness: "-".into(),
            size: "-".into(),
            millis,
            ok: false,
            note: msg,
        },
    }
}

fn cmd_verify_paper() -> i32 {
    let rows = rows();
    let outcomes: Vec<Mutex<Option<RowOutcome>>> =
        rows.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .min(rows.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= rows.len() {
                    break;
                }
                let outcome = check_row(&rows[i]);
                *outcomes[i].lock().unwrap() = Some(outcome);
            });
        }
    });
    println!(
        "{:<24} {:>8} {:>16} {:>7} {:>5} {:>6}  status",
        "row", "verdict", "certificate", "witness", "size", "ms"
    );
    let mut failures = 0;
    for (row, slot) in rows.iter().zip(&outcomes) {
        let o = slot.lock().unwrap().take().unwrap();
        if !o.ok {
            failures += 1;
        }
        println!(
            "{:<24} {:>8} {:>16} {:>7} {:>5} {:>6}  {}{}",
            row.name,
            o.verdict,
            o.variant,
            o.witness,
            o.size,
            o.millis,
            if o.ok { "ok" } else { "FAIL" },
            if o.note.is_empty() {
                String::new()
            } else {
                format!(" ({})", o.note)
            }
        );
    }
    println!("{} rows, {} failures", rows.len(), failures);
    i32::from(failures > 0)
}

// --- rep-family -----------------------------------------------------------

fn parse_pair(text: &str) -> Result<(BigRational, BigRational), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("pair {text:?} should look like 2,3"))?;
    let parse = |s: &str| {
        BigRational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn cmd_rep_family(
    file: Option<&std::path::Path>,
    fixture: Option<&str>,
    pair_args: &[String],
    seed: u64,
) -> Result<i32, String> {
    let p = load_poset(file, fixture)?;
    let cert = square_cycle_cert(&p).ok_or("no square-cycle witness found")?;
    let x = square_cycle_witness(&p, &cert).map_err(|e| e.to_string())?;
    let shape = SquareCycleShape::detect(&x).map_err(|e| e.to_string())?;

    let mut pairs: Vec<(BigRational, BigRational)> = pair_args
        .iter()
        .map(|s| parse_pair(s))
        .collect::<Result<_, _>>()?;
    if pairs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while pairs.len() < 3 {
            let a = BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
            let b = BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
            if a != b && !pairs.contains(&(a.clone(), b.clone())) {
                pairs.push((a, b));
            }
        }
    }

    let reps = pairs
        .iter()
        .map(|(a, b)| build_m_lambda_mu(&x, &shape, a, b, None).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    for rep in &reps {
        validate_rep(rep).map_err(|(a, b)| format!("non-commutative square at ({a}, {b})"))?;
    }
    let k = reps.len();
    let mut end_dims = Vec::with_capacity(k);
    let mut hom = vec![vec![0usize; k]; k];
    let mut iso = vec![vec![false; k]; k];
    for i in 0..k {
        end_dims.push(hom_space(&reps[i], &reps[i]).map_err(|e| e.to_string())?.dim());
        for j in 0..k {
            hom[i][j] = hom_space(&reps[i], &reps[j]).map_err(|e| e.to_string())?.dim();
            iso[i][j] = is_isomorphic_reps(&reps[i], &reps[j]).map_err(|e| e.to_string())?;
        }
    }
    let report = serde_json::json!({
        "witness": cert.to_schema_json(),
        "pairs": pairs.iter().map(|(a, b)| format!("{a},{b}")).collect::<Vec<_>>(),
        "end_dims": end_dims,
        "hom_dims": hom,
        "isomorphic": iso,
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(0)
}
