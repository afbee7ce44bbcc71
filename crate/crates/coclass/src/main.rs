//! Command-line surface: list presentations, realize tables, inspect table
//! files, evaluate counts, run the exhaustive search, and run the full
//! verification harness.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage or
//! domain errors.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coclass::bruteforce::{count_nilpotent, enumerate_nilpotent, SearchConfig};
use coclass::canon::{canonical_key, is_self_dual, CountMode};
use coclass::counting::{formula_count, table1_reference, CountKind, CountQuery, Mode};
use coclass::families::{
    coclass0, coclass1_list, coclass2_gen2_list, coclass2_gen3_list, mode_counts, Presentation,
};
use coclass::tables::MulTable;
use coclass::verify;

#[derive(Parser)]
#[command(
    name = "coclass",
    about = "Nilpotent semigroups of coclass 0, 1, and 2: lists, tables, counts, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Iso,
    #[value(name = "anti-iso")]
    AntiIso,
    Commutative,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Iso => Mode::UpToIso,
            ModeArg::AntiIso => Mode::UpToAntiIso,
            ModeArg::Commutative => Mode::CommutativeUpToIso,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairModeArg {
    Iso,
    #[value(name = "anti-iso")]
    AntiIso,
}

impl From<PairModeArg> for CountMode {
    fn from(m: PairModeArg) -> CountMode {
        match m {
            PairModeArg::Iso => CountMode::UpToIso,
            PairModeArg::AntiIso => CountMode::UpToAntiIso,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Formula,
    Table1,
    Families,
    Bruteforce,
}

#[derive(Subcommand)]
enum Command {
    /// List the classified presentations for an order and coclass
    List {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        coclass: u8,
        /// Restrict to a minimal generating set size (1, 2, or 3)
        #[arg(long = "gen-size")]
        gen_size: Option<u8>,
    },
    /// Print the certified multiplication table of one listed presentation
    Realize {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        coclass: u8,
        #[arg(long = "gen-size")]
        gen_size: Option<u8>,
        /// 0-based position in the corresponding `list` output
        #[arg(long)]
        index: usize,
    },
    /// Report structural data for a multiplication table file
    Inspect { file: PathBuf },
    /// Print one count as CSV
    Count {
        #[arg(long)]
        coclass: u8,
        #[arg(long)]
        order: i64,
        #[arg(long = "gen-size")]
        gen_size: Option<u8>,
        #[arg(long)]
        mode: ModeArg,
        #[arg(long)]
        source: SourceArg,
    },
    /// Exhaustively enumerate nilpotent semigroups of a small order
    Bruteforce {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        coclass: Option<usize>,
        #[arg(long = "gen-size")]
        gen_size: Option<usize>,
        /// Keep only commutative semigroups
        #[arg(long)]
        commutative: bool,
        #[arg(long, value_enum, default_value = "anti-iso")]
        mode: PairModeArg,
        /// Print one canonical key (hex) per class after the count
        #[arg(long = "print-keys")]
        print_keys: bool,
    },
    /// Run the verification harness for all orders up to a bound
    Verify {
        #[arg(long = "max-order")]
        max_order: usize,
    },
}

fn usage_error(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn classified_list(
    order: usize,
    coclass: u8,
    gen_size: Option<u8>,
) -> Result<Vec<Presentation>, String> {
    match (coclass, gen_size) {
        (0, None | Some(1)) => {
            if order >= 1 {
                Ok(vec![coclass0(order)])
            } else {
                Err("coclass 0 needs order >= 1".into())
            }
        }
        (1, None | Some(2)) => coclass1_list(order).map_err(|e| e.to_string()),
        (2, None) => {
            let mut list = coclass2_gen2_list(order).map_err(|e| e.to_string())?;
            list.extend(coclass2_gen3_list(order).map_err(|e| e.to_string())?);
            Ok(list)
        }
        (2, Some(2)) => coclass2_gen2_list(order).map_err(|e| e.to_string()),
        (2, Some(3)) => coclass2_gen3_list(order).map_err(|e| e.to_string()),
        (c, Some(g)) => Err(format!(
            "no classified list for coclass {c} with generating-set size {g}"
        )),
        (c, None) => Err(format!("coclass must be 0, 1, or 2 (got {c})")),
    }
}

fn cmd_list(order: usize, coclass: u8, gen_size: Option<u8>) -> ExitCode {
    match classified_list(order, coclass, gen_size) {
        Ok(list) => {
            for p in list {
                println!("{}  {}", p.text(), p.metadata());
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_realize(order: usize, coclass: u8, gen_size: Option<u8>, index: usize) -> ExitCode {
    let list = match classified_list(order, coclass, gen_size) {
        Ok(list) => list,
        Err(e) => return usage_error(e),
    };
    let Some(p) = list.get(index) else {
        return usage_error(format!(
            "index {index} out of range, the list has {} presentations",
            list.len()
        ));
    };
    match p.realize() {
        Ok(t) => {
            print!("{}", t.to_text());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_inspect(file: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => return usage_error(format!("{}: {e}", file.display())),
    };
    let table = match MulTable::parse(&text) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    let info = table.analyze();
    println!("order: {}", table.order());
    println!(
        "nilpotent: {}",
        if info.is_nilpotent { "yes" } else { "no" }
    );
    if !info.is_nilpotent {
        println!(
            "commutative: {}",
            if table.is_commutative() { "yes" } else { "no" }
        );
        return ExitCode::SUCCESS;
    }
    println!("class: {}", info.class_c.unwrap());
    println!("coclass: {}", info.coclass_r.unwrap());
    let sizes: Vec<String> = info.layers.iter().map(|l| l.len().to_string()).collect();
    println!("layer-sizes: {}", sizes.join(" "));
    let gens: Vec<String> = info.min_gen_set.iter().map(|e| e.to_string()).collect();
    println!(
        "min-generating-set: [{}] (size {})",
        gens.join(" "),
        info.min_gen_set.len()
    );
    println!(
        "commutative: {}",
        if table.is_commutative() { "yes" } else { "no" }
    );
    println!(
        "self-dual: {}",
        if is_self_dual(&table).expect("nilpotent") {
            "yes"
        } else {
            "no"
        }
    );
    let iso = canonical_key(&table, CountMode::UpToIso).expect("nilpotent");
    let anti = canonical_key(&table, CountMode::UpToAntiIso).expect("nilpotent");
    println!("canonical-key-iso: {}", iso.to_hex());
    println!("canonical-key-anti-iso: {}", anti.to_hex());
    ExitCode::SUCCESS
}

fn cmd_count(
    coclass: u8,
    order: i64,
    gen_size: Option<u8>,
    mode: Mode,
    source: SourceArg,
) -> ExitCode {
    let query = CountQuery {
        coclass,
        n: order,
        mode,
        gen_size,
    };
    let kind = match query.kind() {
        Ok(kind) => kind,
        Err(e) => return usage_error(e),
    };
    let count: Result<i64, String> = match source {
        SourceArg::Formula => formula_count(&query).map_err(|e| e.to_string()),
        SourceArg::Table1 => table1_reference(kind, mode, order).map_err(|e| e.to_string()),
        SourceArg::Families => families_count(kind, mode, order),
        SourceArg::Bruteforce => bruteforce_count(kind, mode, order),
    };
    match count {
        Ok(count) => {
            println!("type,mode,order,count,source");
            let source = match source {
                SourceArg::Formula => "formula",
                SourceArg::Table1 => "table1",
                SourceArg::Families => "families",
                SourceArg::Bruteforce => "bruteforce",
            };
            println!(
                "{},{},{order},{count},{source}",
                kind.as_str(),
                mode.as_str()
            );
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn families_count(kind: CountKind, mode: Mode, order: i64) -> Result<i64, String> {
    let n = usize::try_from(order).map_err(|_| format!("bad order {order}"))?;
    let pick = |counts: (i64, i64, i64)| match mode {
        Mode::UpToAntiIso => counts.0,
        Mode::UpToIso => counts.1,
        Mode::CommutativeUpToIso => counts.2,
    };
    match kind {
        CountKind::Coclass1 => coclass1_list(n)
            .map(|l| pick(mode_counts(&l)))
            .map_err(|e| e.to_string()),
        CountKind::Coclass2Gen2 => coclass2_gen2_list(n)
            .map(|l| pick(mode_counts(&l)))
            .map_err(|e| e.to_string()),
        CountKind::Coclass2Gen3 => coclass2_gen3_list(n)
            .map(|l| pick(mode_counts(&l)))
            .map_err(|e| e.to_string()),
        CountKind::Coclass2 => {
            let gen2 = coclass2_gen2_list(n).map_err(|e| e.to_string())?;
            let gen3 = coclass2_gen3_list(n).map_err(|e| e.to_string())?;
            Ok(pick(mode_counts(&gen2)) + pick(mode_counts(&gen3)))
        }
    }
}

fn bruteforce_count(kind: CountKind, mode: Mode, order: i64) -> Result<i64, String> {
    let n = usize::try_from(order).map_err(|_| format!("bad order {order}"))?;
    let mut cfg = SearchConfig::new(n);
    cfg = match kind {
        CountKind::Coclass1 => cfg.coclass(1),
        CountKind::Coclass2 => cfg.coclass(2),
        CountKind::Coclass2Gen2 => cfg.coclass(2).gen_size(2),
        CountKind::Coclass2Gen3 => cfg.coclass(2).gen_size(3),
    };
    cfg = match mode {
        Mode::UpToAntiIso => cfg.mode(CountMode::UpToAntiIso),
        Mode::UpToIso => cfg.mode(CountMode::UpToIso),
        Mode::CommutativeUpToIso => cfg.mode(CountMode::UpToIso).commutative(),
    };
    count_nilpotent(&cfg)
        .map(|c| c as i64)
        .map_err(|e| e.to_string())
}

fn cmd_bruteforce(
    order: usize,
    coclass: Option<usize>,
    gen_size: Option<usize>,
    commutative: bool,
    mode: CountMode,
    print_keys: bool,
) -> ExitCode {
    let mut cfg = SearchConfig::new(order).mode(mode);
    if let Some(r) = coclass {
        cfg = cfg.coclass(r);
    }
    if let Some(g) = gen_size {
        cfg = cfg.gen_size(g);
    }
    if commutative {
        cfg = cfg.commutative();
    }
    match enumerate_nilpotent(&cfg) {
        Ok(reps) => {
            println!("{}", reps.len());
            if print_keys {
                for t in &reps {
                    let key = canonical_key(t, mode).expect("nilpotent");
                    println!("{}", key.to_hex());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_verify(max_order: usize) -> ExitCode {
    if !(verify::MIN_ORDER..=verify::MAX_ORDER).contains(&max_order) {
        return usage_error(format!(
            "--max-order must be between {} and {}",
            verify::MIN_ORDER,
            verify::MAX_ORDER
        ));
    }
    let checks = verify::run_all(max_order);
    let mut all_ok = true;
    for c in &checks {
        println!(
            "{} {} [{}]",
            if c.ok { "PASS" } else { "FAIL" },
            c.label,
            c.detail
        );
        all_ok &= c.ok;
    }
    if all_ok {
        println!("verified up to order {max_order}");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List {
            order,
            coclass,
            gen_size,
        } => cmd_list(order, coclass, gen_size),
        Command::Realize {
            order,
            coclass,
            gen_size,
            index,
        } => cmd_realize(order, coclass, gen_size, index),
        Command::Inspect { file } => cmd_inspect(&file),
        Command::Count {
            coclass,
            order,
            gen_size,
            mode,
            source,
        } => cmd_count(coclass, order, gen_size, mode.into(), source),
        Command::Bruteforce {
            order,
            coclass,
            gen_size,
            commutative,
            mode,
            print_keys,
        } => cmd_bruteforce(
            order,
            coclass,
            gen_size,
            commutative,
            mode.into(),
            print_keys,
        ),
        Command::Verify { max_order } => cmd_verify(max_order),
    }
}
