use std::path::PathBuf;
use std::process::ExitCode;

use apievolve::commands;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "apievolve", version, about = "Migrate deprecated Android API calls from an after-update example")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an update script from an example that already guards the new API
    CreateScript {
        #[arg(long)]
        example: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Apply a script to one file (in place unless -o is given)
    Apply {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Keep the temporaries introduced by normalization
        #[arg(long)]
        keep_temps: bool,
    },
    /// Create a script and apply it to every .java file under a directory
    Migrate {
        #[arg(long)]
        example: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Compare readability of the API usages in two files
    Score {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Run a corpus manifest and check expected outputs
    Corpus {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        report: PathBuf,
        /// Also write updated files under this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CreateScript { example, mapping, out } => commands::create_script_cmd(example, mapping, out),
        Command::Apply { script, target, out, report, keep_temps } => {
            commands::apply_cmd(script, target, out.as_deref(), report.as_deref(), !keep_temps)
        }
        Command::Migrate { example, mapping, targets, report } => commands::migrate_cmd(example, mapping, targets, report),
        Command::Score { before, after, mapping } => commands::score_cmd(before, after, mapping),
        Command::Corpus { manifest, report, out } => commands::corpus_cmd(manifest, report, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
