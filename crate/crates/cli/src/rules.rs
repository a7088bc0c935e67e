//! Turning rule flags into a rule, with the flag combinations checked up front.

use std::sync::Arc;

use clap::Args;
use distrat::oracles::Oracle;
use distrat::{Bounds, ConsensusSpec, DrRule, ElectionDistance, Norm, RankingMetric, Rule, RuleHandle, Size, Strategy};
use num_rational::Ratio;

use crate::UsageError;

#[derive(Args, Debug, Clone, Default)]
pub struct RuleArgs {
    /// Classical rule: plurality, borda, kemeny, dodgson, young, copeland[:half|:0],
    /// maximin, slater, modal, vrr, litvak or scoring:w1,w2,...
    #[arg(long)]
    pub rule: Option<String>,
    /// Consensus class: sunam, wunam, unam, maj, cond, cond-m, fixed-extension.
    #[arg(long)]
    pub consensus: Option<String>,
    /// Distance: hamming, kendall, spearman, weighted:w1,..., tournament,
    /// reduced-tournament, insertion, deletion.
    #[arg(long)]
    pub metric: Option<String>,
    /// Norm for votewise distances: l1, l2, lp (with --p) or linf.
    #[arg(long)]
    pub norm: Option<String>,
    /// Exponent for --norm lp, an integer or a fraction like 3/2.
    #[arg(long)]
    pub p: Option<String>,
    /// Majority threshold in [1/2, 1) for maj and cond classes.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Length of the consensus rankings: an integer or "full".
    #[arg(long)]
    pub s: Option<String>,
    /// Divide votewise distances by the voter count.
    #[arg(long)]
    pub normalized: bool,
    /// Use the earth mover (voter-relabeling quotient) form of the votewise distance.
    #[arg(long)]
    pub quotient: bool,
    /// auto, closed-form, specialized or brute.
    #[arg(long, default_value = "auto")]
    pub strategy: String,
}

#[derive(Clone, Debug)]
pub enum RuleChoice {
    Oracle(Oracle),
    Dr(DrRule),
}

impl RuleChoice {
    pub fn handle(&self) -> RuleHandle {
        match self {
            RuleChoice::Oracle(o) => Arc::new(o.clone()),
            RuleChoice::Dr(d) => Arc::new(d.clone()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            RuleChoice::Oracle(o) => o.name(),
            RuleChoice::Dr(d) => d.name(),
        }
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn parse_ratio(flag: &str, text: &str) -> Result<Ratio<i64>, UsageError> {
    text.trim().parse::<Ratio<i64>>().map_err(|_| usage(format!("--{flag}: '{text}' is not an integer or fraction")))
}

fn parse_size(text: &str) -> Result<Size, UsageError> {
    if text == "full" {
        return Ok(Size::Full);
    }
    match text.parse::<usize>() {
        Ok(s) if s > 0 => Ok(Size::Top(s)),
        _ => Err(usage(format!("--s: '{text}' is not a positive integer or 'full'"))),
    }
}

fn parse_weights(text: &str) -> Result<Vec<i64>, UsageError> {
    text.split(',')
        .map(|w| w.trim().parse::<i64>().map_err(|_| usage(format!("--metric: bad weight '{w}'"))))
        .collect()
}

impl RuleArgs {
    /// A rule is required: either `--rule` or `--consensus` with `--metric`.
    pub fn build(&self) -> Result<RuleChoice, UsageError> {
        match (&self.rule, &self.consensus) {
            (Some(_), Some(_)) => Err(usage("--rule and --consensus are mutually exclusive")),
            (None, None) => Err(usage("give --rule, or --consensus with --metric")),
            (Some(name), None) => {
                let dr_flags = [
                    ("--metric", self.metric.is_some()),
                    ("--norm", self.norm.is_some()),
                    ("--p", self.p.is_some()),
                    ("--alpha", self.alpha.is_some()),
                    ("--s", self.s.is_some()),
                    ("--normalized", self.normalized),
                    ("--quotient", self.quotient),
                ];
                if let Some((flag, _)) = dr_flags.iter().find(|f| f.1) {
                    return Err(usage(format!("{flag} only applies with --consensus")));
                }
                name.parse::<Oracle>().map(RuleChoice::Oracle).map_err(|e| usage(e.to_string()))
            }
            (None, Some(_)) => self.build_dr().map(RuleChoice::Dr),
        }
    }

    /// Only the distance-rationalized form; for commands that need score tables.
    pub fn build_dr(&self) -> Result<DrRule, UsageError> {
        if self.rule.is_some() {
            return Err(usage("this command needs --consensus and --metric, not --rule"));
        }
        let consensus = self.consensus()?;
        let distance = self.distance()?;
        let strategy = match self.strategy.as_str() {
            "auto" => Strategy::Auto,
            "closed-form" => Strategy::VmpClosedForm,
            "specialized" => Strategy::Specialized,
            "brute" => Strategy::BruteForce(Bounds::default()),
            other => return Err(usage(format!("--strategy: unknown '{other}'"))),
        };
        Ok(DrRule::new(consensus, distance).with_strategy(strategy))
    }

    fn consensus(&self) -> Result<ConsensusSpec, UsageError> {
        let name = self.consensus.as_deref().ok_or_else(|| usage("--consensus is required"))?;
        let alpha = self.alpha.as_deref().map(|a| parse_ratio("alpha", a)).transpose()?;
        if let Some(a) = alpha {
            if a < Ratio::new(1, 2) || a >= Ratio::from_integer(1) {
                return Err(usage(format!("--alpha {a} outside [1/2, 1)")));
            }
        }
        let s = self.s.as_deref().map(parse_size).transpose()?;
        let half = Ratio::new(1, 2);
        let no_alpha = |k: ConsensusSpec| {
            if alpha.is_some() {
                Err(usage(format!("--alpha does not apply to {name}")))
            } else {
                Ok(k)
            }
        };
        let no_s = |k: ConsensusSpec| {
            if s.is_some() {
                Err(usage(format!("--s does not apply to {name}")))
            } else {
                Ok(k)
            }
        };
        match name {
            "sunam" => no_s(ConsensusSpec::sunam()).and_then(no_alpha),
            "wunam" => no_s(ConsensusSpec::wunam()).and_then(no_alpha),
            "unam" => no_alpha(ConsensusSpec::Unanimity { s: s.unwrap_or(Size::Full) }),
            "maj" => Ok(ConsensusSpec::QualifiedMajority { alpha: alpha.unwrap_or(half), s: s.unwrap_or(Size::Top(1)) }),
            "cond" => no_s(ConsensusSpec::Condorcet { alpha: alpha.unwrap_or(half) }),
            "cond-m" => Ok(ConsensusSpec::cond_restricted(alpha.unwrap_or(half), s.unwrap_or(Size::Full))),
            "fixed-extension" => no_alpha(ConsensusSpec::FixedExtension { s: s.unwrap_or(Size::Top(1)) }),
            other => Err(usage(format!("--consensus: unknown class '{other}'"))),
        }
    }

    fn distance(&self) -> Result<ElectionDistance, UsageError> {
        let name = self.metric.as_deref().ok_or_else(|| usage("--metric is required with --consensus"))?;
        let ranking_metric = match name {
            "hamming" => Some(RankingMetric::Discrete),
            "kendall" => Some(RankingMetric::Kendall),
            "spearman" => Some(RankingMetric::Spearman),
            _ => match name.strip_prefix("weighted:") {
                Some(w) => Some(RankingMetric::Weighted(parse_weights(w)?)),
                None => None,
            },
        };
        let Some(metric) = ranking_metric else {
            let votewise_flags = [
                ("--norm", self.norm.is_some()),
                ("--p", self.p.is_some()),
                ("--normalized", self.normalized),
                ("--quotient", self.quotient),
            ];
            if let Some((flag, _)) = votewise_flags.iter().find(|f| f.1) {
                return Err(usage(format!("{flag} only applies to votewise metrics")));
            }
            return match name {
                "tournament" => Ok(ElectionDistance::Tournament { reduced: false }),
                "reduced-tournament" => Ok(ElectionDistance::Tournament { reduced: true }),
                "insertion" => Ok(ElectionDistance::Insertion),
                "deletion" => Ok(ElectionDistance::Deletion),
                other => Err(usage(format!("--metric: unknown distance '{other}'"))),
            };
        };
        let norm = self.norm()?;
        if self.quotient {
            if self.normalized {
                return Err(usage("--normalized does not combine with --quotient"));
            }
            return Ok(ElectionDistance::Quotient { metric, norm });
        }
        Ok(ElectionDistance::Votewise { metric, norm, normalized: self.normalized })
    }

    pub fn norm(&self) -> Result<Norm, UsageError> {
        let name = self.norm.as_deref().unwrap_or("l1");
        if name != "lp" && self.p.is_some() {
            return Err(usage("--p only applies with --norm lp"));
        }
        match name {
            "l1" => Ok(Norm::l1()),
            "l2" => Ok(Norm::lp(2)),
            "linf" => Ok(Norm::Linf),
            "lp" => {
                let p = self.p.as_deref().ok_or_else(|| usage("--norm lp needs --p"))?;
                let p = parse_ratio("p", p)?;
                if p <= Ratio::from_integer(0) {
                    return Err(usage("--p must be positive"));
                }
                Ok(Norm::Lp(p))
            }
            other => Err(usage(format!("--norm: unknown norm '{other}'"))),
        }
    }
}
