//! Named built-in distributions and the end-to-end example gallery.

use supfact_core::builtins::{
    additive_uniform_joint, colosseum_joint, darts_joint, exponential_cdf, normal_cdf,
    ratio_product_joint, ratio_product_tail_mass, uniform_cdf, with_replacement_table,
    without_replacement_table,
};
use supfact_core::dist::{
    beta_bernoulli_joint, CantorCdf, ContinuousJoint, DiscreteJoint, MixedJoint,
};

use crate::config::RunConfig;
use crate::error::{input_err, Result};

/// Names accepted by the `example` subcommand, each reproducing one worked
/// case end to end.
pub const EXAMPLE_NAMES: [&str; 8] = [
    "darts",
    "colosseum",
    "example7",
    "example8-iid",
    "example8-srs",
    "example9",
    "beta-bernoulli",
    "cantor",
];

/// Names accepted by `--builtin`. Parameterized entries take a colon suffix.
pub const BUILTIN_NAMES: [&str; 12] = [
    "normal",
    "uniform",
    "exponential",
    "cantor",
    "darts-uniform",
    "darts",
    "colosseum",
    "example7",
    "example8-iid",
    "example8-srs",
    "example9",
    "beta-bernoulli",
];

/// A bivariate distribution a pipeline can run on.
pub enum JointDist {
    Continuous(ContinuousJoint),
    Mixed(MixedJoint),
    Discrete(DiscreteJoint),
}

/// A joint plus the scan-window facts reports need: which bbox edges clip a
/// support that continues past them, and notes worth surfacing verbatim.
pub struct JointInput {
    pub dist: JointDist,
    pub clipped_x: (bool, bool),
    pub clipped_y: (bool, bool),
    pub notes: Vec<String>,
}

impl JointInput {
    pub fn unclipped(dist: JointDist) -> Self {
        JointInput {
            dist,
            clipped_x: (false, false),
            clipped_y: (false, false),
            notes: Vec::new(),
        }
    }
}

/// A univariate CDF with the domain window to scan for support.
pub struct OneDInput {
    pub cdf: Box<dyn Fn(f64) -> f64>,
    pub domain: (f64, f64),
    /// Whether each domain edge clips a distribution that continues past it.
    pub clipped: (bool, bool),
}

pub enum BuiltinDist {
    Joint(JointInput),
    OneD(OneDInput),
}

impl core::fmt::Debug for BuiltinDist {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BuiltinDist::Joint(j) => {
                let kind = match j.dist {
                    JointDist::Continuous(_) => "Continuous",
                    JointDist::Mixed(_) => "Mixed",
                    JointDist::Discrete(_) => "Discrete",
                };
                write!(f, "Joint({kind})")
            }
            BuiltinDist::OneD(o) => write!(f, "OneD(domain {:?})", o.domain),
        }
    }
}

/// Resolves a `--builtin` spec like `exponential:0.5` or `beta-bernoulli:2,3`
/// into a distribution. The clip window in `cfg` bounds unbounded supports.
pub fn build_builtin(spec: &str, cfg: &RunConfig) -> Result<BuiltinDist> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let parse_f64 = |what: &str, s: &str| {
        s.parse::<f64>()
            .map_err(|_| input_err(format!("{what} must be a number, got {s:?}")))
    };
    match name {
        "normal" => {
            no_args(name, args)?;
            let (lo, hi) = cfg.clip.unwrap_or((-8.0, 8.0));
            Ok(BuiltinDist::OneD(OneDInput {
                cdf: Box::new(normal_cdf),
                domain: (lo, hi),
                clipped: (true, true),
            }))
        }
        "uniform" => {
            no_args(name, args)?;
            Ok(BuiltinDist::OneD(OneDInput {
                cdf: Box::new(uniform_cdf),
                domain: (0.0, 1.0),
                clipped: (false, false),
            }))
        }
        "exponential" => {
            let eta = match args {
                Some(a) => parse_f64("rate", a)?,
                None => 1.0,
            };
            if !(eta > 0.0) || !eta.is_finite() {
                return Err(input_err(format!("rate must be positive, got {eta}")));
            }
            let hi = cfg.clip.map(|c| c.1).unwrap_or(40.0 / eta);
            Ok(BuiltinDist::OneD(OneDInput {
                cdf: Box::new(move |x| exponential_cdf(eta, x)),
                domain: (0.0, hi),
                clipped: (false, true),
            }))
        }
        "cantor" => {
            let levels = match args {
                Some(a) => a
                    .parse::<u32>()
                    .map_err(|_| input_err(format!("levels must be an integer, got {a:?}")))?,
                None => 10,
            };
            let c = CantorCdf::new(levels)?;
            Ok(BuiltinDist::OneD(OneDInput {
                cdf: Box::new(move |x| c.eval(x)),
                domain: (0.0, 1.0),
                clipped: (false, false),
            }))
        }
        "darts" | "darts-uniform" => {
            no_args(name, args)?;
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Continuous(darts_joint()?))))
        }
        "colosseum" => {
            no_args(name, args)?;
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Continuous(
                colosseum_joint()?,
            ))))
        }
        "example7" => {
            no_args(name, args)?;
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Continuous(
                additive_uniform_joint()?,
            ))))
        }
        "example9" => {
            no_args(name, args)?;
            let clip_hi = cfg.clip.map(|c| c.1).unwrap_or(8.0);
            let tail = ratio_product_tail_mass(clip_hi);
            Ok(BuiltinDist::Joint(JointInput {
                dist: JointDist::Continuous(ratio_product_joint(clip_hi)?),
                clipped_x: (false, true),
                clipped_y: (false, false),
                notes: vec![format!(
                    "first coordinate clipped to [0, {clip_hi}]; mass beyond the clip is {tail:.6}"
                )],
            }))
        }
        "beta-bernoulli" => {
            let (a, b) = match args {
                Some(s) => {
                    let (sa, sb) = s.split_once(',').ok_or_else(|| {
                        input_err(format!("expected alpha,beta after the colon, got {s:?}"))
                    })?;
                    (parse_f64("alpha", sa.trim())?, parse_f64("beta", sb.trim())?)
                }
                None => (1.0, 1.0),
            };
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Mixed(beta_bernoulli_joint(
                a, b,
            )?))))
        }
        "example8-iid" => {
            no_args(name, args)?;
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Discrete(
                with_replacement_table()?,
            ))))
        }
        "example8-srs" => {
            no_args(name, args)?;
            Ok(BuiltinDist::Joint(JointInput::unclipped(JointDist::Discrete(
                without_replacement_table()?,
            ))))
        }
        other => Err(input_err(format!(
            "unknown builtin {other:?}; available: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

fn no_args(name: &str, args: Option<&str>) -> Result<()> {
    match args {
        None => Ok(()),
        Some(a) => Err(input_err(format!("builtin {name:?} takes no parameters, got {a:?}"))),
    }
}

/// Rejects unknown example names with the full registry listing, as the
/// `example` subcommand promises.
pub fn check_example_name(name: &str) -> Result<()> {
    if EXAMPLE_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(input_err(format!(
            "unknown example {name:?}; registry: {}",
            EXAMPLE_NAMES.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_example_name_resolves_as_a_builtin_too() {
        let cfg = RunConfig::default();
        for name in EXAMPLE_NAMES {
            check_example_name(name).unwrap();
            build_builtin(name, &cfg).unwrap();
        }
    }

    #[test]
    fn parameterized_builtins_parse_their_suffixes() {
        let cfg = RunConfig::default();
        assert!(matches!(
            build_builtin("exponential:0.5", &cfg),
            Ok(BuiltinDist::OneD(_))
        ));
        assert!(matches!(
            build_builtin("beta-bernoulli:2,3", &cfg),
            Ok(BuiltinDist::Joint(JointInput { dist: JointDist::Mixed(_), .. }))
        ));
        assert!(matches!(
            build_builtin("cantor:5", &cfg),
            Ok(BuiltinDist::OneD(_))
        ));
        assert!(build_builtin("exponential:-1", &cfg).is_err());
        assert!(build_builtin("uniform:3", &cfg).is_err());
    }

    #[test]
    fn unknown_names_list_the_registry() {
        let err = check_example_name("exampleX").unwrap_err();
        assert!(err.to_string().contains("example8-srs"));
        let cfg = RunConfig::default();
        let err = build_builtin("mystery", &cfg).unwrap_err();
        assert!(err.to_string().contains("darts-uniform"));
    }
}
