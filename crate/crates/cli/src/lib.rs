//! Configuration, orchestration and report emission for the verification
//! pipelines of `dbar-core`.

pub mod config;
pub mod pipelines;
pub mod report;

use std::io;

use thiserror::Error;

pub use config::{parse_weight, RunConfig};
pub use pipelines::Subcommand;
pub use report::{emit_report, CheckRecord, RunOutput, SuiteResult};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Core(#[from] dbar_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// Runs a pipeline without writing anything.
pub fn execute(
    config: &RunConfig,
    sub: Subcommand,
    sequential: bool,
) -> Result<RunOutput, CliError> {
    config.validate()?;
    let ctx = pipelines::Context::new(config, sequential);
    let stage = pipelines::run_stage(&ctx, sub)?;
    Ok(RunOutput {
        subcommand: sub.name().into(),
        config: config.clone(),
        sequential,
        result: SuiteResult::new(stage.checks),
        details: stage.details,
        fields: stage.fields,
        series: stage.series,
    })
}

/// Runs a pipeline and writes its reports to the configured output
/// directory in the configured format.
pub fn run(config: &RunConfig, sub: Subcommand, sequential: bool) -> Result<SuiteResult, CliError> {
    // Reject a bad format before doing any numerical work.
    config.output.format.parse::<report::Format>()?;
    let out = execute(config, sub, sequential)?;
    let written = emit_report(&out, &config.output.format, &config.output.dir)?;
    for path in &written {
        log::info!("wrote {}", path.display());
    }
    Ok(out.result)
}
