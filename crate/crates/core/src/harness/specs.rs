//! Text selectors for instances, allocation functions and adversary budgets.

use super::adversary::AdversaryBudget;
use crate::allocation::AllocationFunction;
use crate::error::{Error, Result};
use crate::instance::{
    gen_complete_bipartite, gen_random, gen_triangular, gen_two_phase_matching_hard,
    reduce_ski_rental, InstanceStream, RandomMode, SkiRentalSpec,
};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.trim()
        .parse()
        .map_err(|_| usage(format!("{what}: cannot parse `{tok}`")))
}

fn args<'a>(params: &'a str, min: usize, max: usize, name: &str) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = if params.is_empty() {
        Vec::new()
    } else {
        params.split(',').collect()
    };
    if parts.len() < min || parts.len() > max {
        return Err(usage(format!(
            "{name} takes {} parameter(s), got {}",
            if min == max { min.to_string() } else { format!("{min}..{max}") },
            parts.len()
        )));
    }
    Ok(parts)
}

/// `triangular:n`, `two-phase:n`, `complete:d,m`, `random:n,p[,seed[,mode]]`
/// or `ski:B,eps,t_end`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Triangular(usize),
    TwoPhase(usize),
    Complete(usize, usize),
    Random {
        n: usize,
        p: f64,
        seed: Option<u64>,
        mode: RandomMode,
    },
    Ski(SkiRentalSpec),
}

impl GenSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        match name.trim() {
            "triangular" => {
                let a = args(params, 1, 1, name)?;
                Ok(GenSpec::Triangular(num(a[0], "n")?))
            }
            "two-phase" | "two-phase-matching-hard" => {
                let a = args(params, 1, 1, name)?;
                Ok(GenSpec::TwoPhase(num(a[0], "n")?))
            }
            "complete" | "complete-bipartite" => {
                let a = args(params, 2, 2, name)?;
                Ok(GenSpec::Complete(num(a[0], "d")?, num(a[1], "m")?))
            }
            "random" => {
                let a = args(params, 2, 4, name)?;
                let seed = a.get(2).map(|s| num(s, "seed")).transpose()?;
                let mode = match a.get(3) {
                    None => RandomMode::General,
                    Some(m) => RandomMode::from_name(m.trim())
                        .ok_or_else(|| usage(format!("unknown random mode `{m}`")))?,
                };
                Ok(GenSpec::Random {
                    n: num(a[0], "n")?,
                    p: num(a[1], "p")?,
                    seed,
                    mode,
                })
            }
            "ski" | "ski-rental" => {
                let a = args(params, 3, 3, name)?;
                let spec = SkiRentalSpec::classical(
                    num(a[0], "buy cost")?,
                    num(a[1], "eps")?,
                    num(a[2], "t_end")?,
                );
                spec.validate().map_err(|e| usage(e.to_string()))?;
                Ok(GenSpec::Ski(spec))
            }
            other => Err(usage(format!("unknown generator `{other}`"))),
        }
    }

    /// `seed` is used when a random spec does not fix its own.
    pub fn build(&self, seed: u64) -> Result<InstanceStream> {
        match self {
            GenSpec::Triangular(n) => gen_triangular(*n),
            GenSpec::TwoPhase(n) => gen_two_phase_matching_hard(*n),
            GenSpec::Complete(d, m) => gen_complete_bipartite(*d, *m),
            GenSpec::Random { n, p, seed: s, mode } => gen_random(*n, *p, s.unwrap_or(seed), *mode),
            GenSpec::Ski(spec) => reduce_ski_rental(spec),
        }
    }
}

/// `linear-alpha`, `family-k:<k>`, `greedy` or `optimal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FSpec {
    LinearAlpha,
    FamilyK(f64),
    Greedy,
    Optimal,
}

impl FSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, param) = text.split_once(':').unwrap_or((text, ""));
        let bare = |f: FSpec| {
            if param.is_empty() {
                Ok(f)
            } else {
                Err(usage(format!("`{name}` takes no parameter")))
            }
        };
        match name.trim() {
            "linear-alpha" => bare(FSpec::LinearAlpha),
            "greedy" => bare(FSpec::Greedy),
            "optimal" => bare(FSpec::Optimal),
            "family-k" => {
                let k: f64 = num(param, "k")?;
                if !(k >= 1.0 && k.is_finite()) {
                    return Err(usage(format!("k must be a finite value >= 1, got {param}")));
                }
                Ok(FSpec::FamilyK(k))
            }
            other => Err(usage(format!("unknown allocation function `{other}`"))),
        }
    }

    pub fn build(self) -> Result<AllocationFunction> {
        match self {
            FSpec::LinearAlpha => Ok(AllocationFunction::linear_alpha()),
            FSpec::FamilyK(k) => AllocationFunction::closed_form(k),
            FSpec::Greedy => Ok(AllocationFunction::greedy()),
            FSpec::Optimal => AllocationFunction::optimal(),
        }
    }
}

/// `k,d[,cap]`; the cap defaults to `20·d`.
pub fn parse_budget(text: &str) -> Result<AdversaryBudget> {
    let a = args(text.trim(), 2, 3, "budget")?;
    let phases: usize = num(a[0], "phases")?;
    let d: usize = num(a[1], "d")?;
    let cap = match a.get(2) {
        Some(c) => num(c, "cap")?,
        None => AdversaryBudget::DEFAULT_CAP_FACTOR * d,
    };
    let budget = AdversaryBudget {
        phases,
        per_phase_cap: cap,
        offline_d: d,
        convergence_threshold: AdversaryBudget::DEFAULT_THRESHOLD,
    };
    budget.validate()?;
    Ok(budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs() {
        assert_eq!(GenSpec::parse("triangular:5").unwrap(), GenSpec::Triangular(5));
        assert_eq!(GenSpec::parse("complete:3,7").unwrap(), GenSpec::Complete(3, 7));
        assert_eq!(
            GenSpec::parse("random:20,0.5,9,alternating").unwrap(),
            GenSpec::Random {
                n: 20,
                p: 0.5,
                seed: Some(9),
                mode: RandomMode::BipartiteAlternating
            }
        );
        let r = GenSpec::parse("random:10,0.3").unwrap();
        assert_eq!(r.build(4).unwrap(), GenSpec::parse("random:10,0.3,4").unwrap().build(0).unwrap());
        assert_eq!(GenSpec::parse("ski:100,1,250").unwrap().build(0).unwrap().len(), 502);
        for bad in ["", "triangular", "triangular:x", "complete:3", "random:5,0.1,1,odd", "hex:3", "ski:1,0,5"] {
            assert!(matches!(GenSpec::parse(bad), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn allocation_specs() {
        assert_eq!(FSpec::parse("family-k:1.5").unwrap(), FSpec::FamilyK(1.5));
        assert_eq!(FSpec::parse("optimal").unwrap(), FSpec::Optimal);
        for bad in ["family-k", "family-k:0.5", "family-k:nan", "greedy:2", "cubic"] {
            assert!(FSpec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn budgets() {
        let b = parse_budget("2,50").unwrap();
        assert_eq!((b.phases, b.offline_d, b.per_phase_cap), (2, 50, 1000));
        assert_eq!(parse_budget("1,10,7").unwrap().per_phase_cap, 7);
        for bad in ["0,10", "1,0", "1", "1,2,3,4", "a,b"] {
            assert!(parse_budget(bad).is_err(), "{bad}");
        }
    }
}
