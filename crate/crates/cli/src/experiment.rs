use std::fs::File;
use std::io::{self, Write};

use unidp::harness::{run_experiment, ExperimentConfig, ExperimentReport};

use crate::args::{ExperimentArgs, Format};
use crate::failure::Failure;

pub fn config(args: &ExperimentArgs) -> ExperimentConfig {
    let m = &args.mechanism;
    ExperimentConfig {
        trials: args.trials,
        seed: m.seed,
        noiseless: m.noiseless,
        settings: m.settings(),
        c1: args.c1,
        c: args.c,
        bucket: m.bucket,
        tau: m.tau,
        ..ExperimentConfig::new(args.dist, args.estimator, args.n, m.epsilon, m.beta)
    }
}

pub fn write_csv<W: Write>(report: &ExperimentReport, out: W) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in &report.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &ExperimentArgs) -> Result<(), Failure> {
    let report = run_experiment(&config(args))?;
    let out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = io::BufWriter::new(out);
    match args.format {
        Format::Csv => write_csv(&report, &mut out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    if let Some(path) = &args.summary {
        let f = File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        serde_json::to_writer_pretty(f, &report.aggregate)?;
    }
    Ok(())
}
