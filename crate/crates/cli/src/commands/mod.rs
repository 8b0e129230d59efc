mod decompose;
mod gen;
mod growth;
mod honda;
mod logmat;
mod prep;
mod tower;

use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::{GenKind, Order, Xi};

pub(crate) enum Job {
    Logmat,
    Prep,
    Prep2(Order),
    Decompose,
    Decompose2,
    MtStabilize(Xi),
    HondaVerify,
    Growth,
    Gen(GenKind),
}

/// Runs `job`, filling defaulted parameters into `config`.
pub(crate) fn run(job: Job, config: &mut RunConfig) -> CliResult<Value> {
    match job {
        Job::Logmat => logmat::run(config),
        Job::Prep => prep::one(config),
        Job::Prep2(order) => prep::two(config, order),
        Job::Decompose => decompose::one(config),
        Job::Decompose2 => decompose::two(config),
        Job::MtStabilize(xi) => tower::run(config, xi),
        Job::HondaVerify => honda::run(config),
        Job::Growth => growth::run(config),
        Job::Gen(kind) => gen::run(config, kind),
    }
}
