//! Exhaustive reference recognizer.
//!
//! Every injective, type-compatible total mapping is graded with the same
//! evaluation as the search, one by one, without any pruning.

use thiserror::Error;

use crate::recognition::{sort_instances, Context, RecognitionError, Situation, State, TemplateInstance};
use crate::template::CompiledTemplate;

/// Largest number of complete mappings the oracle will enumerate.
pub const MAX_MAPPINGS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Recognition(#[from] RecognitionError),
    #[error("{count} mappings exceed the oracle limit of {MAX_MAPPINGS}")]
    TooLarge { count: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub instances: Vec<TemplateInstance>,
    pub mappings_evaluated: u64,
}

/// Exact number of injective compatible total mappings, counting at most
/// `limit + 1`.
fn count_mappings(ctx: &Context<'_>, limit: u64) -> u64 {
    fn go(ctx: &Context<'_>, o: usize, used: &mut [bool], limit: u64, acc: &mut u64) {
        if *acc > limit {
            return;
        }
        if o == ctx.compat.len() {
            *acc += 1;
            return;
        }
        for &s in &ctx.compat[o] {
            if !used[s] {
                used[s] = true;
                go(ctx, o + 1, used, limit, acc);
                used[s] = false;
            }
        }
    }
    let mut acc = 0;
    go(ctx, 0, &mut vec![false; ctx.situation.objects.len()], limit, &mut acc);
    acc
}

pub fn brute_force_recognize(
    ct: &CompiledTemplate,
    situation: &Situation,
    threshold: f64,
) -> Result<OracleRun, OracleError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(RecognitionError::ThresholdOutOfRange(threshold).into());
    }
    let ctx = Context::new(ct, situation)?;
    let count = count_mappings(&ctx, MAX_MAPPINGS);
    if count > MAX_MAPPINGS {
        let product = ctx.compat.iter().map(|c| c.len() as u64).fold(1u64, u64::saturating_mul);
        return Err(OracleError::TooLarge { count: product });
    }

    let mut state = State::new(&ctx);
    let mut instances = Vec::new();
    let mut evaluated = 0;
    enumerate(&ctx, &mut state, 0, threshold, &mut instances, &mut evaluated);
    sort_instances(&mut instances);
    Ok(OracleRun { instances, mappings_evaluated: evaluated })
}

fn enumerate(
    ctx: &Context<'_>,
    state: &mut State,
    o: usize,
    threshold: f64,
    out: &mut Vec<TemplateInstance>,
    evaluated: &mut u64,
) {
    if o == ctx.compat.len() {
        *evaluated += 1;
        let overall = state.evaluate_all(ctx);
        if overall > 0.0 && overall >= threshold {
            out.push(state.instance(ctx));
        }
        state.clear_results(ctx);
        return;
    }
    for &s in &ctx.compat[o] {
        if !state.used[s] {
            state.bind(ctx, o, s);
            enumerate(ctx, state, o + 1, threshold, out, evaluated);
            state.unbind(o);
        }
    }
}
