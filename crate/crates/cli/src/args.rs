use anyhow::{bail, Context, Result};
use clap::Args;
use tangleroof::{solve_coefficients, FamilyParams};

/// Family selection: five coefficients, an `(s, tau_ghz)` pair, or the
/// symmetric GHZ/W pair.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Coefficient of |000> in the GHZ part.
    #[arg(long)]
    pub a: Option<f64>,
    /// Coefficient of |111> in the GHZ part.
    #[arg(long)]
    pub b: Option<f64>,
    /// Coefficient of |001> in the W part.
    #[arg(long)]
    pub c: Option<f64>,
    /// Coefficient of |010> in the W part.
    #[arg(long)]
    pub d: Option<f64>,
    /// Coefficient of |100> in the W part.
    #[arg(long)]
    pub f: Option<f64>,
    /// s = 4cdf / (a^2 b); requires --tau-ghz.
    #[arg(long)]
    pub s: Option<f64>,
    /// Three-tangle 4a^2b^2 of the GHZ part; requires --s.
    #[arg(long = "tau-ghz")]
    pub tau_ghz: Option<f64>,
    /// a = b = 1/sqrt(2), c = d = f = 1/sqrt(3).
    #[arg(long)]
    pub symmetric: bool,
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<FamilyParams> {
        let coeffs = [self.a, self.b, self.c, self.d, self.f];
        let any_coeff = coeffs.iter().any(Option::is_some);
        let any_pair = self.s.is_some() || self.tau_ghz.is_some();
        let modes = [any_coeff, any_pair, self.symmetric]
            .iter()
            .filter(|&&m| m)
            .count();
        if modes > 1 {
            bail!("give either --a/--b/--c/--d/--f, or --s with --tau-ghz, or --symmetric; not a mix");
        }
        if self.symmetric {
            return Ok(FamilyParams::symmetric());
        }
        if any_coeff {
            let [Some(a), Some(b), Some(c), Some(d), Some(f)] = coeffs else {
                bail!("all five coefficients --a --b --c --d --f are required");
            };
            return FamilyParams::new(a, b, c, d, f).context("invalid family coefficients");
        }
        match (self.s, self.tau_ghz) {
            (Some(s), Some(tau)) => solve_coefficients(s, tau)
                .with_context(|| format!("no family for s = {s}, tau_ghz = {tau}")),
            (None, None) => bail!("no family given: use --a..--f, --s/--tau-ghz or --symmetric"),
            _ => bail!("--s and --tau-ghz must be given together"),
        }
    }
}

/// Decomposition sizes, parsed from one comma-separated value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

/// Comma-separated decomposition sizes, e.g. `3,4,5`.
pub fn parse_sizes(text: &str) -> Result<Sizes, String> {
    text.split(',')
        .map(|t| {
            let m: usize = t.trim().parse().map_err(|e| format!("bad size {t:?}: {e}"))?;
            if (2..=8).contains(&m) {
                Ok(m)
            } else {
                Err(format!("size {m} outside 2..=8"))
            }
        })
        .collect::<Result<_, _>>()
        .map(Sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> FamilyArgs {
        FamilyArgs {
            a: None,
            b: None,
            c: None,
            d: None,
            f: None,
            s: None,
            tau_ghz: None,
            symmetric: false,
        }
    }

    #[test]
    fn rejects_mixed_inputs() {
        let args = FamilyArgs {
            a: Some(1.0),
            s: Some(1.0),
            tau_ghz: Some(0.5),
            ..empty()
        };
        assert!(args.resolve().is_err());
        assert!(empty().resolve().is_err());
        let half = FamilyArgs {
            s: Some(1.0),
            ..empty()
        };
        assert!(half.resolve().is_err());
    }

    #[test]
    fn resolves_pair() {
        let args = FamilyArgs {
            s: Some(2.3),
            tau_ghz: Some(0.0396),
            ..empty()
        };
        let fam = args.resolve().unwrap();
        assert!((fam.s().unwrap() - 2.3).abs() < 1e-10);
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("3,4, 5").unwrap(), Sizes(vec![3, 4, 5]));
        assert!(parse_sizes("1,3").is_err());
        assert!(parse_sizes("x").is_err());
    }
}
