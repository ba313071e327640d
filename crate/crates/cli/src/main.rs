mod args;
mod estimate;
mod experiment;
mod failure;
mod input;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use unidp::oracles::{population_params, PopulationRequest};
use unidp::NoiseSource;

use args::{Cli, Command};
use failure::Failure;

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Estimate(args) => {
            let data = input::read_values(args.input.as_deref())?;
            let report = estimate::run(&data, args.estimator, &args.mechanism)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Experiment(args) => experiment::run(&args)?,
        Command::Oracle(args) => {
            let req = PopulationRequest {
                moments: args.moments,
                phi_levels: args.phi_levels,
                theta_kappas: args.theta_kappas,
                tail_xis: args.tail_xis,
            };
            let params = population_params(&args.dist, &req)?;
            println!("{}", serde_json::to_string_pretty(&params)?);
        }
        Command::Sample(args) => {
            let mut noise = NoiseSource::new(args.seed);
            let mut out = BufWriter::new(io::stdout().lock());
            // unsorted, in draw order; `{}` prints the shortest exact form
            for _ in 0..args.n {
                writeln!(out, "{}", args.dist.draw(&mut noise))?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
