//! `rpt` — batch tables and verification suites for restricted-partition
//! number families, in exact arithmetic.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 oracle guardrail violation.

mod output;
mod verify;

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use output::{Document, Format, Sequence, Table};
use rpt_core::arith::rat_to_int;
use rpt_core::blockset::BlockSizeSet;
use rpt_core::fubini::{fubini, fubini_egf};
use rpt_core::lonesum::{
    count_restricted, decode, decompose, decomposable_count, is_lonesum, BinaryMatrix,
};
use rpt_core::oracle::SCAN_DEFAULT_CELLS;
use rpt_core::polybern::{pb_egf, pb_iterated_integral, poly_bernoulli};
use rpt_core::riordan::RiordanArray;
use rpt_core::series::TruncatedEgf2;
use rpt_core::stirling::{
    bell_polynomial, stirling_direct, stirling_egf, StirlingTriangle,
};

#[derive(Parser)]
#[command(name = "rpt", version, about = "Exact restricted-partition number families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Variant {
    NoZeros,
    WithZeros,
}

#[derive(Subcommand)]
enum Command {
    /// S-restricted Stirling triangle (or one entry with --k)
    Stirling {
        /// Block-size set: all, <=m, >=m, even, odd, {a,b,c}, or | unions
        #[arg(long)]
        set: String,
        /// Largest row index n
        #[arg(long)]
        n: usize,
        /// Print only the entry {n brace k}
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        /// Series truncation override (default: n + 4)
        #[arg(long)]
        order: Option<usize>,
    },
    /// S-restricted Bell numbers (or polynomials with --poly)
    Bell {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
        /// Print the Bell polynomials instead of the numbers
        #[arg(long)]
        poly: bool,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// S-restricted Fubini (ordered Bell) numbers
    Fubini {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// (S1,S2)-restricted lonesum counts, or analysis of one matrix
    Lonesum {
        /// Row-type restriction set
        #[arg(long)]
        s1: Option<String>,
        /// Column-type restriction set
        #[arg(long)]
        s2: Option<String>,
        /// Number of rows
        #[arg(long)]
        n: Option<usize>,
        /// Number of columns
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "no-zeros")]
        variant: Variant,
        /// Analyze a 0/1 matrix file instead ("-" for stdin)
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Lonesum-decomposable counts by decomposition order
    Decomposable {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Print only the given order (otherwise all orders plus the total)
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// S-restricted poly-Bernoulli numbers B_{n,S}^{(k)} for n = 0..N
    Polybernoulli {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
        /// Polylogarithm order k (any sign)
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// The Riordan matrix M_S (or its inverse triangle with --inverse)
    Riordan {
        #[arg(long)]
        set: String,
        /// Largest row index n (matrix is (n+1) x (n+1))
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run formula-vs-oracle verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        /// Largest n*k scanned exhaustively in the lonesum suite
        #[arg(long, default_value_t = 12)]
        max_cells: usize,
    },
}

enum CliError {
    Usage(String),
    Guardrail(String),
    Mismatch(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(msg)) => {
            eprintln!("FAIL {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Guardrail(msg)) => {
            eprintln!("guardrail: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_set(text: &str) -> Result<BlockSizeSet, CliError> {
    text.parse()
        .map_err(|e| CliError::Usage(format!("invalid block-size set {text:?}: {e}")))
}

/// Effective truncation order: `max_index + 4` unless overridden; an
/// override below the minimum needed for exactness is a usage error.
fn effective_order(max_index: usize, requested: Option<usize>) -> Result<usize, CliError> {
    let default = max_index + 4;
    match requested {
        None => Ok(default),
        Some(o) if o >= max_index => Ok(o),
        Some(o) => Err(CliError::Usage(format!(
            "--order {o} is below the required minimum {max_index}"
        ))),
    }
}

fn emit(doc: Document, body: String, format: Format) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Csv | Format::Pretty => println!("{body}"),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Stirling {
            set,
            n,
            k,
            format,
            order,
        } => {
            let s = parse_set(&set)?;
            let ord = effective_order(n, order)?;
            let triangle = StirlingTriangle::build(&s, n);
            // All three routes must coincide before anything is printed.
            for i in 0..=n {
                for j in 0..=i {
                    let value = triangle.get(i, j);
                    assert_eq!(value, stirling_direct(i, j, &s), "route drift at ({i},{j})");
                    assert_eq!(value, stirling_egf(i, j, &s), "route drift at ({i},{j})");
                }
            }
            let table = Table {
                rows: match k {
                    Some(k) => {
                        if k > n {
                            return Err(CliError::Usage(format!("--k {k} exceeds --n {n}")));
                        }
                        vec![vec![triangle.get(n, k).to_string()]]
                    }
                    None => (0..=n)
                        .map(|i| (0..=n).map(|j| triangle.get(i, j).to_string()).collect())
                        .collect(),
                },
            };
            let mut doc = Document::new("stirling", &["direct", "egf", "recurrence"])
                .param("set", &s)
                .param("n", n)
                .param("order", ord);
            if let Some(k) = k {
                doc = doc.param("k", k);
            }
            doc.values = table.to_value();
            let body = match format {
                Format::Csv => table.render_csv(),
                _ => table.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Bell {
            set,
            n,
            poly,
            format,
            order,
        } => {
            let s = parse_set(&set)?;
            let ord = effective_order(n, order)?;
            let triangle = StirlingTriangle::build(&s, n);
            let bell_series = s
                .egf(n)
                .exp()
                .expect("E_S has no constant term");
            let entries: Vec<(String, String)> = (0..=n)
                .map(|i| {
                    let value = triangle.bell(i);
                    assert_eq!(
                        value,
                        rat_to_int(&bell_series.egf_coeff(i)),
                        "route drift at n={i}"
                    );
                    let rendered = if poly {
                        bell_polynomial(i, &s).to_string()
                    } else {
                        value.to_string()
                    };
                    (i.to_string(), rendered)
                })
                .collect();
            let seq = Sequence {
                name: if poly { "B_poly" } else { "B" }.to_string(),
                entries,
            };
            let mut doc = Document::new("bell", &["triangle-sum", "egf"])
                .param("set", &s)
                .param("n", n)
                .param("poly", poly)
                .param("order", ord);
            doc.values = seq.to_value();
            let body = match format {
                Format::Csv => seq.render_csv(if poly { "n,polynomial" } else { "n,value" }),
                _ => seq.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Fubini {
            set,
            n,
            format,
            order,
        } => {
            let s = parse_set(&set)?;
            let ord = effective_order(n, order)?;
            let entries: Vec<(String, String)> = (0..=n)
                .map(|i| {
                    let value = fubini(i, &s);
                    assert_eq!(value, fubini_egf(i, &s), "route drift at n={i}");
                    (i.to_string(), value.to_string())
                })
                .collect();
            let seq = Sequence {
                name: "F".to_string(),
                entries,
            };
            let mut doc = Document::new("fubini", &["definition-sum", "egf"])
                .param("set", &s)
                .param("n", n)
                .param("order", ord);
            doc.values = seq.to_value();
            let body = match format {
                Format::Csv => seq.render_csv("n,value"),
                _ => seq.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Lonesum {
            s1,
            s2,
            n,
            k,
            variant,
            matrix,
            format,
            order,
        } => {
            if let Some(path) = matrix {
                return analyze_matrix(&path, format);
            }
            let (s1, s2, n, k) = match (s1, s2, n, k) {
                (Some(s1), Some(s2), Some(n), Some(k)) => (s1, s2, n, k),
                _ => {
                    return Err(CliError::Usage(
                        "lonesum needs --s1 --s2 --n --k (or --matrix)".to_string(),
                    ))
                }
            };
            let s1 = parse_set(&s1)?;
            let s2 = parse_set(&s2)?;
            let ord = effective_order(n.max(k), order)?;
            // One bivariate series serves the whole table.
            let e1 = s1.egf(n);
            let e2 = s2.egf(k);
            let core = TruncatedEgf2::outer_product(&e1, &e2)
                .quasi_inverse()
                .expect("no constant term");
            let one = |e: &rpt_core::series::TruncatedEgf| {
                e.add(&rpt_core::series::TruncatedEgf::one(e.order()))
            };
            let series = match variant {
                Variant::NoZeros => core,
                Variant::WithZeros => {
                    TruncatedEgf2::outer_product(&one(&e1), &one(&e2)).mul(&core)
                }
            };
            let rows: Vec<Vec<String>> = (0..=n)
                .map(|i| {
                    (0..=k)
                        .map(|j| {
                            let value = rat_to_int(&series.egf_coeff2(i, j));
                            if variant == Variant::NoZeros {
                                assert_eq!(
                                    value,
                                    count_restricted(i, j, &s1, &s2),
                                    "route drift at ({i},{j})"
                                );
                            }
                            value.to_string()
                        })
                        .collect()
                })
                .collect();
            let table = Table { rows };
            let routes: &[&str] = match variant {
                Variant::NoZeros => &["egf", "formula"],
                Variant::WithZeros => &["egf"],
            };
            let mut doc = Document::new("lonesum", routes)
                .param("s1", &s1)
                .param("s2", &s2)
                .param("n", n)
                .param("k", k)
                .param(
                    "variant",
                    match variant {
                        Variant::NoZeros => "no-zeros",
                        Variant::WithZeros => "with-zeros",
                    },
                )
                .param("order", ord);
            doc.values = table.to_value();
            let body = match format {
                Format::Csv => table.render_csv(),
                _ => table.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Decomposable {
            s1,
            s2,
            n,
            k,
            r,
            format,
            order,
        } => {
            let s1 = parse_set(&s1)?;
            let s2 = parse_set(&s2)?;
            let ord = effective_order(n.max(k), order)?;
            let entries: Vec<(String, String)> = match r {
                Some(r) => vec![(
                    r.to_string(),
                    decomposable_count(n, k, &s1, &s2, Some(r)).to_string(),
                )],
                None => {
                    let mut entries = Vec::new();
                    let mut sum = BigInt::from(0);
                    for r in 0..=n.min(k) {
                        let value = decomposable_count(n, k, &s1, &s2, Some(r));
                        sum += &value;
                        entries.push((r.to_string(), value.to_string()));
                    }
                    let total = decomposable_count(n, k, &s1, &s2, None);
                    assert_eq!(sum, total, "per-order sum must match the exp-form total");
                    entries.push(("total".to_string(), total.to_string()));
                    entries
                }
            };
            let seq = Sequence {
                name: "D".to_string(),
                entries,
            };
            let mut doc = Document::new("decomposable", &["egf-per-order", "egf-exp-total"])
                .param("s1", &s1)
                .param("s2", &s2)
                .param("n", n)
                .param("k", k)
                .param("order", ord);
            if let Some(r) = r {
                doc = doc.param("r", r);
            }
            doc.values = seq.to_value();
            let body = match format {
                Format::Csv => seq.render_csv("r,value"),
                _ => seq.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Polybernoulli {
            set,
            n,
            k,
            format,
            order,
        } => {
            let s = parse_set(&set)?;
            let ord = effective_order(n, order)?;
            let mut routes = vec!["definition-sum", "egf"];
            if k >= 1 {
                routes.push("iterated-integral");
            }
            let entries: Vec<(String, String)> = (0..=n)
                .map(|i| {
                    let value = poly_bernoulli(i, k, &s);
                    assert_eq!(value, pb_egf(i, k, &s), "route drift at n={i}");
                    if k >= 1 {
                        assert_eq!(
                            value,
                            pb_iterated_integral(i, k, &s).expect("k >= 1"),
                            "route drift at n={i}"
                        );
                    }
                    (i.to_string(), value.to_string())
                })
                .collect();
            let seq = Sequence {
                name: format!("B^({k})"),
                entries,
            };
            let mut doc = Document::new("polybernoulli", &routes)
                .param("set", &s)
                .param("n", n)
                .param("k", k)
                .param("order", ord);
            doc.values = seq.to_value();
            let body = match format {
                Format::Csv => seq.render_csv("n,value"),
                _ => seq.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Riordan {
            set,
            n,
            inverse,
            format,
            order,
        } => {
            let s = parse_set(&set)?;
            let ord = effective_order(n, order)?;
            let size = n + 1;
            let array = RiordanArray::stirling_matrix(&s, size)
                .map_err(|e| CliError::Usage(format!("cannot build M_S for {s}: {e}")))?;
            let matrix = if inverse {
                let t = array.inverse().expect("unit diagonal");
                let product = array.matrix().mul(&t).expect("same size");
                assert_eq!(
                    product,
                    rpt_core::riordan::LowerTriangular::identity(size),
                    "orthogonality failure"
                );
                t
            } else {
                array.matrix().clone()
            };
            let table = Table {
                rows: (0..size)
                    .map(|i| (0..size).map(|j| matrix.get(i, j).to_string()).collect())
                    .collect(),
            };
            let routes: &[&str] = if inverse {
                &["forward-substitution", "orthogonality"]
            } else {
                &["column-egf"]
            };
            let mut doc = Document::new("riordan", routes)
                .param("set", &s)
                .param("n", n)
                .param("inverse", inverse)
                .param("order", ord);
            doc.values = table.to_value();
            let body = match format {
                Format::Csv => table.render_csv(),
                _ => table.render_pretty(),
            };
            emit(doc, body, format);
        }

        Command::Verify { suite, max_cells } => {
            let oracle_cap = oracle_cap_from_env()?;
            if max_cells > oracle_cap {
                return Err(CliError::Guardrail(format!(
                    "--max-cells {max_cells} exceeds the oracle cap {oracle_cap} \
                     (raise RPT_MAX_CELLS, hard limit 24)"
                )));
            }
            match verify::run(suite, max_cells, oracle_cap) {
                Ok(()) => {}
                Err(verify::VerifyError::Mismatch(m)) => {
                    return Err(CliError::Mismatch(format!(
                        "{}: first counterexample: {}",
                        m.suite, m.detail
                    )))
                }
                Err(verify::VerifyError::Guardrail(e)) => {
                    return Err(CliError::Guardrail(e.to_string()))
                }
            }
        }
    }
    Ok(())
}

/// Oracle scan budget: `RPT_MAX_CELLS` overrides the default, hard-capped by
/// the library at 24 cells.
fn oracle_cap_from_env() -> Result<usize, CliError> {
    match std::env::var("RPT_MAX_CELLS") {
        Err(_) => Ok(SCAN_DEFAULT_CELLS),
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("RPT_MAX_CELLS={text:?} is not a number"))),
    }
}

fn analyze_matrix(path: &str, format: Format) -> Result<(), CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?
    };
    let matrix: BinaryMatrix = text
        .parse()
        .map_err(|e| CliError::Usage(format!("bad matrix: {e}")))?;
    let lonesum = is_lonesum(&matrix);
    let report = decompose(&matrix);

    let block_list = |blocks: &[Vec<usize>]| -> String {
        blocks
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut doc = Document::new("lonesum", &["structure"])
        .param("matrix", path)
        .param("rows", matrix.n_rows())
        .param("cols", matrix.n_cols());
    let mut lines = vec![
        format!("lonesum: {lonesum}"),
        format!("decomposable: {}", report.decomposable),
        format!("order: {}", report.order),
    ];
    let mut values = BTreeMap::new();
    values.insert("lonesum".to_string(), serde_json::json!(lonesum));
    values.insert(
        "decomposable".to_string(),
        serde_json::json!(report.decomposable),
    );
    values.insert("order".to_string(), serde_json::json!(report.order));
    if lonesum {
        let pair = decode(&matrix).expect("lonesum matrices decode");
        lines.push(format!("row blocks: {}", block_list(&pair.row_blocks)));
        lines.push(format!("col blocks: {}", block_list(&pair.col_blocks)));
        values.insert(
            "row_blocks".to_string(),
            serde_json::json!(pair.row_blocks),
        );
        values.insert(
            "col_blocks".to_string(),
            serde_json::json!(pair.col_blocks),
        );
        values.insert("zero_rows".to_string(), serde_json::json!(pair.zero_rows));
        values.insert("zero_cols".to_string(), serde_json::json!(pair.zero_cols));
    }
    doc.values = serde_json::json!(values);
    emit(doc, lines.join("\n"), format);
    Ok(())
}
