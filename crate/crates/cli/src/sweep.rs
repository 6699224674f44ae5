use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use topecycle::hamilton::verify_certificate;
use topecycle::io::{parse_arrangement, write_certificate, write_graph};

use crate::error::{CliError, CliResult};
use crate::pipeline::{any_tope_graph, cycle_of_arrangement, Method, Settings};
use crate::{read, write};

pub const MANIFEST_HEADER: &str = "file\thyperplanes\ttopes\tedges\tmethod\tcert\tverified\tseconds";

#[derive(Debug, Default)]
struct Entry {
    file: String,
    hyperplanes: Option<usize>,
    topes: Option<usize>,
    edges: Option<usize>,
    method: String,
    cert: Option<String>,
    verified: bool,
    seconds: f64,
}

impl Entry {
    fn row(&self) -> String {
        let opt = |v: Option<usize>| v.map_or("-".to_owned(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
            self.file,
            opt(self.hyperplanes),
            opt(self.topes),
            opt(self.edges),
            self.method,
            self.cert.as_deref().unwrap_or("-"),
            self.verified,
            self.seconds
        )
    }
}

fn input_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let io = |source| CliError::Io {
        path: dir.to_owned(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let hidden = path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn process(path: &Path, out: &Path, settings: &Settings, entry: &mut Entry) -> CliResult<()> {
    let a = parse_arrangement(&read(path)?)?;
    entry.hyperplanes = Some(a.len());
    let g = any_tope_graph(&a, &settings.build)?;
    entry.topes = Some(g.len());
    entry.edges = Some(g.edges().len());
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("arrangement");
    write(&out.join(format!("{stem}.graph")), &write_graph(&g))?;
    let cycle = cycle_of_arrangement(&a, Method::Auto, settings)?;
    entry.method = cycle.method;
    let cert = format!("{stem}.cycle");
    write(&out.join(&cert), &write_certificate(&cycle.certificate))?;
    entry.cert = Some(cert);
    verify_certificate(&g, &cycle.certificate).map_err(CliError::Violation)?;
    entry.verified = true;
    Ok(())
}

/// Processes every file of `dir`, writing graphs, certificates and
/// `manifest.tsv` into `out`. Failures are recorded and reported at the end.
pub fn sweep(dir: &Path, out: &Path, settings: &Settings) -> CliResult<()> {
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_owned(),
        source,
    })?;
    let files = input_files(dir)?;
    let mut manifest = format!("{MANIFEST_HEADER}\n");
    let mut failed = 0;
    for path in &files {
        let mut entry = Entry {
            file: path.file_name().unwrap().to_string_lossy().into_owned(),
            method: "-".into(),
            ..Entry::default()
        };
        let clock = Instant::now();
        let result = process(path, out, settings, &mut entry);
        entry.seconds = clock.elapsed().as_secs_f64();
        if let Err(e) = result {
            failed += 1;
            if entry.method == "-" {
                entry.method = format!("failed:{}", e.kind());
            }
            eprintln!("error\t{}\t{}: {}", e.kind(), entry.file, e);
        }
        writeln!(manifest, "{}", entry.row()).unwrap();
    }
    write(&out.join("manifest.tsv"), &manifest)?;
    print!("{manifest}");
    if failed > 0 {
        return Err(CliError::Sweep {
            failed,
            total: files.len(),
        });
    }
    Ok(())
}
