mod bci;
mod geom;
mod sim;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bciarm", version, about = "BCI-driven arm: geometry, vision, EEG and control tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multivector expressions.
    Cga {
        #[command(subcommand)]
        command: geom::CgaCommand,
    },
    /// Inverse kinematics.
    Ik {
        #[command(subcommand)]
        command: geom::IkCommand,
    },
    /// Tabletop images.
    Vision {
        #[command(subcommand)]
        command: geom::VisionCommand,
    },
    /// Motor-imagery classifier.
    Bci {
        #[command(subcommand)]
        command: bci::BciCommand,
    },
    /// Event-related potentials.
    P300 {
        #[command(subcommand)]
        command: bci::P300Command,
    },
    /// Analysis of variance.
    Stats {
        #[command(subcommand)]
        command: bci::StatsCommand,
    },
    /// Control sessions.
    Sim {
        #[command(subcommand)]
        command: sim::SimCommand,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cga { command } => geom::cga(command),
        Command::Ik { command } => geom::ik(command),
        Command::Vision { command } => geom::vision(command),
        Command::Bci { command } => bci::bci(command),
        Command::P300 { command } => bci::p300(command),
        Command::Stats { command } => bci::stats(command),
        Command::Sim { command } => sim::sim(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
