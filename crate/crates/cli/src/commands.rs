use std::collections::HashSet;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use reeb_rp2::count::{self, erratum};
use reeb_rp2::enumerate::{EnumerateError, Enumerator};
use reeb_rp2::io::{parse_edge_list, write_dot, write_edge_list, EdgeListError, HEADER};
use reeb_rp2::{encode_full, full_from_explicit, validate, ExplicitGraph, Kind};

use crate::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: EdgeListError,
    },
    #[error(transparent)]
    Cap(#[from] EnumerateError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Stdout(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Cap(EnumerateError::NoSaddles) => 2,
            CliError::Cap(_) => 3,
            CliError::Io { .. } | CliError::Stdout(_) => 4,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn count(max_saddles: usize, kind: Kind, as_json: bool) -> Result<u8, CliError> {
    if max_saddles < kind.min_saddles() {
        return Err(CliError::Usage(format!(
            "--max-saddles must be at least {} for {kind} graphs",
            kind.min_saddles()
        )));
    }
    let rows = count::table(max_saddles, kind);
    let mut out = BufWriter::new(io::stdout().lock());
    if as_json {
        let values: Vec<Value> = rows
            .iter()
            .map(|(k, v)| {
                let mut entry = json!({ "k": k, "value": v.to_string() });
                if let Some(e) = erratum(kind, *k) {
                    entry["erratum"] = json!({
                        "published": e.published.to_string(),
                        "note": e.note(),
                    });
                }
                entry
            })
            .collect();
        let doc = json!({ "format": HEADER, "kind": kind, "values": values });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("json value")
        )
        .map_err(CliError::Stdout)?;
    } else {
        for (k, v) in &rows {
            if let Some(e) = erratum(kind, *k) {
                writeln!(out, "# note: {}", e.note()).map_err(CliError::Stdout)?;
            }
            writeln!(out, "{k}\t{v}").map_err(CliError::Stdout)?;
        }
    }
    out.flush().map_err(CliError::Stdout)?;
    Ok(0)
}

/// One enumerated object, ready to be written.
struct Item {
    canon: String,
    graph: ExplicitGraph,
}

fn file_name(index: usize, width: usize, canon: &str, format: Format) -> String {
    let digest = Sha256::digest(canon.as_bytes());
    let ext = match format {
        Format::Canon => "txt",
        Format::Dot => "dot",
        Format::Edgelist => "reeb",
    };
    format!("{index:0width$}_{}.{ext}", &hex::encode(digest)[..16])
}

fn render(item: &Item, format: Format) -> String {
    match format {
        Format::Canon => format!("{}\n", item.canon),
        Format::Dot => format!("// {}\n{}", item.canon, write_dot(&item.graph)),
        Format::Edgelist => {
            let body = write_edge_list(&item.graph);
            let (header, rest) = body.split_once('\n').expect("header line");
            format!("{header}\n# canon {}\n{rest}", item.canon)
        }
    }
}

pub fn enumerate(
    saddles: usize,
    kind: Kind,
    format: Format,
    out_dir: Option<&Path>,
    cap: u64,
) -> Result<u8, CliError> {
    if out_dir.is_none() && format != Format::Canon {
        return Err(CliError::Usage(
            "--out-dir is required for dot and edgelist output".into(),
        ));
    }
    let mut enumerator = Enumerator::with_cap(cap);
    let items: Box<dyn Iterator<Item = Item>> = match kind {
        Kind::Rooted => {
            let level = enumerator.rooted(saddles)?;
            Box::new((0..level.len()).map(move |i| Item {
                canon: level[i].to_string(),
                graph: level[i].to_explicit(),
            }))
        }
        Kind::Full => Box::new(enumerator.full(saddles)?.map(|g| Item {
            canon: encode_full(&g).into_string(),
            graph: g.to_explicit(),
        })),
    };

    let Some(dir) = out_dir else {
        let mut out = BufWriter::new(io::stdout().lock());
        for item in items {
            writeln!(out, "{}", item.canon).map_err(CliError::Stdout)?;
        }
        out.flush().map_err(CliError::Stdout)?;
        return Ok(0);
    };

    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let total = count::count(kind, saddles);
    let width = total.to_string().len();
    let mut manifest = String::new();
    for (index, item) in items.enumerate() {
        let name = file_name(index, width, &item.canon, format);
        let path = dir.join(&name);
        fs::write(&path, render(&item, format)).map_err(io_err(&path))?;
        manifest.push_str(&item.canon);
        manifest.push('\t');
        manifest.push_str(&name);
        manifest.push('\n');
    }
    // written last so that its presence marks a complete run
    let path = dir.join("manifest.txt");
    fs::write(&path, manifest).map_err(io_err(&path))?;
    Ok(0)
}

struct Row {
    kind: Kind,
    k: usize,
    formula: BigUint,
    enumerated: Option<usize>,
    invalid: usize,
    duplicates: usize,
}

impl Row {
    fn ok(&self) -> bool {
        match self.enumerated {
            Some(n) => {
                BigUint::from(n) == self.formula && self.invalid == 0 && self.duplicates == 0
            }
            None => true,
        }
    }
}

pub fn verify(
    max_saddles: usize,
    max_rooted: usize,
    max_full: usize,
    cap: u64,
    inject_fault: bool,
) -> Result<u8, CliError> {
    let mut enumerator = Enumerator::with_cap(cap);
    let mut rows = Vec::new();
    let top_rooted = max_saddles.min(max_rooted);

    for k in 0..=max_saddles {
        let mut formula = count::rooted_count(k);
        if inject_fault && k == top_rooted {
            formula += 1u32;
        }
        let mut row = Row {
            kind: Kind::Rooted,
            k,
            formula,
            enumerated: None,
            invalid: 0,
            duplicates: 0,
        };
        if k <= max_rooted {
            let level = enumerator.rooted(k)?;
            let distinct: HashSet<String> = level.iter().map(|t| t.to_string()).collect();
            row.enumerated = Some(level.len());
            row.duplicates = level.len() - distinct.len();
        }
        rows.push(row);
    }

    for k in 1..=max_saddles {
        let mut row = Row {
            kind: Kind::Full,
            k,
            formula: count::full_count(k),
            enumerated: None,
            invalid: 0,
            duplicates: 0,
        };
        if k <= max_full {
            let mut seen = HashSet::new();
            let mut n = 0;
            for g in enumerator.full(k)? {
                n += 1;
                if !validate::check(&g.to_explicit()).is_valid() {
                    row.invalid += 1;
                }
                if !seen.insert(encode_full(&g)) {
                    row.duplicates += 1;
                }
            }
            row.enumerated = Some(n);
        }
        rows.push(row);
    }

    let mut out = BufWriter::new(io::stdout().lock());
    let w =
        |out: &mut BufWriter<_>, line: String| writeln!(out, "{line}").map_err(CliError::Stdout);
    w(&mut out, "kind\tk\tformula\tenumerated\tstatus".into())?;
    let mut all_ok = true;
    for row in &rows {
        let status = match row.enumerated {
            None => "skipped".to_string(),
            Some(_) if row.ok() => "match".to_string(),
            Some(_) => {
                let mut why = vec!["mismatch".to_string()];
                if row.invalid > 0 {
                    why.push(format!("{} invalid", row.invalid));
                }
                if row.duplicates > 0 {
                    why.push(format!("{} duplicates", row.duplicates));
                }
                why.join(", ")
            }
        };
        all_ok &= row.ok();
        let enumerated = row.enumerated.map_or("-".to_string(), |n| n.to_string());
        w(
            &mut out,
            format!(
                "{}\t{}\t{}\t{}\t{}",
                row.kind, row.k, row.formula, enumerated, status
            ),
        )?;
        if row.enumerated.is_some() {
            if let Some(e) = erratum(row.kind, row.k) {
                w(&mut out, format!("# note: {}", e.note()))?;
            }
        }
    }
    w(
        &mut out,
        format!(
            "result\t{}",
            if all_ok { "all levels match" } else { "FAILED" }
        ),
    )?;
    out.flush().map_err(CliError::Stdout)?;
    Ok(if all_ok { 0 } else { 1 })
}

fn read_graph(path: &Path) -> Result<ExplicitGraph, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_edge_list(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn check(path: &Path, as_json: bool) -> Result<u8, CliError> {
    let g = read_graph(path)?;
    let report = validate::check(&g);
    let canon = if report.is_valid() {
        full_from_explicit(&g)
            .ok()
            .map(|f| encode_full(&f).into_string())
    } else {
        None
    };
    let mut out = io::stdout().lock();
    if as_json {
        let doc = json!({
            "format": HEADER,
            "valid": report.is_valid(),
            "checks": report.checks(),
            "canon": canon,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("json value")
        )
    } else {
        writeln!(out, "{report}").and_then(|_| match &canon {
            Some(c) => writeln!(out, "canon\t{c}"),
            None => Ok(()),
        })
    }
    .map_err(CliError::Stdout)?;
    Ok(if report.is_valid() { 0 } else { 1 })
}

pub fn iso(first: &Path, second: &Path) -> Result<u8, CliError> {
    let a = read_graph(first)?;
    let b = read_graph(second)?;
    let mut canons = Vec::with_capacity(2);
    for (path, g) in [(first, &a), (second, &b)] {
        match full_from_explicit(g) {
            Ok(f) => canons.push(encode_full(&f)),
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return Ok(1);
            }
        }
    }
    let same = canons[0] == canons[1];
    println!("{}", if same { "isomorphic" } else { "not-isomorphic" });
    Ok(if same { 0 } else { 1 })
}
