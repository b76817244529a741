use std::path::PathBuf;

use num_bigint::BigUint;

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;
pub const DEFAULT_CODE_BUDGET: u64 = 1_000_000;

/// Budgets and output location for one invocation. Flags win over the
/// `LAB_STEP_BUDGET` / `LAB_CODE_BUDGET` environment variables, which win
/// over the defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub step_budget: u64,
    pub code_budget: BigUint,
    pub seed: u64,
    pub output_dir: PathBuf,
}

fn env_var(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|v| !v.trim().is_empty())
}

impl RunConfig {
    pub fn resolve(
        step_budget: Option<u64>,
        code_budget: Option<BigUint>,
        seed: u64,
        output_dir: PathBuf,
    ) -> Result<Self, String> {
        let step_budget = match step_budget {
            Some(b) => b,
            None => match env_var("LAB_STEP_BUDGET") {
                Some(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| format!("LAB_STEP_BUDGET: `{v}` is not a step count"))?,
                None => DEFAULT_STEP_BUDGET,
            },
        };
        let code_budget = match code_budget {
            Some(b) => b,
            None => match env_var("LAB_CODE_BUDGET") {
                Some(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| format!("LAB_CODE_BUDGET: `{v}` is not a natural number"))?,
                None => BigUint::from(DEFAULT_CODE_BUDGET),
            },
        };
        if step_budget == 0 || code_budget == BigUint::default() {
            return Err("budgets must be at least 1".into());
        }
        Ok(RunConfig {
            step_budget,
            code_budget,
            seed,
            output_dir,
        })
    }
}
