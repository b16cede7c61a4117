use std::path::PathBuf;
use std::str::FromStr;

use refl3d_core::coeff::EvalPoint;
use refl3d_core::reps::ParameterSet;

/// `canonical` or `file=<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamsArg {
    Canonical,
    File(PathBuf),
}

impl FromStr for ParamsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "canonical" => Ok(ParamsArg::Canonical),
            _ => match s.strip_prefix("file=") {
                Some(p) if !p.is_empty() => Ok(ParamsArg::File(PathBuf::from(p))),
                _ => Err(format!("expected canonical or file=<path>, got {s:?}")),
            },
        }
    }
}

impl ParamsArg {
    pub fn load(&self) -> Result<ParameterSet, String> {
        match self {
            ParamsArg::Canonical => Ok(ParameterSet::canonical()),
            ParamsArg::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                ParameterSet::from_assignments(&text)
            }
        }
    }
}

/// `symbolic` or `eval[:q=<rat>[,<rat>...]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Evaluated(Vec<EvalPoint>),
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(Mode::Symbolic);
        }
        if s == "eval" {
            return Ok(Mode::Evaluated(EvalPoint::defaults()));
        }
        let list = s.strip_prefix("eval:q=").ok_or_else(|| format!("expected symbolic or eval:q=<rat>[,...], got {s:?}"))?;
        let points = list
            .split(',')
            .map(|x| x.trim().parse::<EvalPoint>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if points.is_empty() {
            return Err("no evaluation points".into());
        }
        Ok(Mode::Evaluated(points))
    }
}

impl Mode {
    pub fn label(&self) -> String {
        match self {
            Mode::Symbolic => "symbolic".into(),
            Mode::Evaluated(ps) => {
                let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("eval:q={}", v.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_modes() {
        assert_eq!("symbolic".parse::<Mode>().unwrap(), Mode::Symbolic);
        let Mode::Evaluated(ps) = "eval:q=2/3,5/7".parse::<Mode>().unwrap() else { panic!() };
        assert_eq!(ps.len(), 2);
        assert_eq!("eval:q=2/3,5/7".parse::<Mode>().unwrap().label(), "eval:q=2/3,5/7");
        assert!("eval:q=".parse::<Mode>().is_err());
        assert!("fast".parse::<Mode>().is_err());
    }

    #[test]
    fn parses_params() {
        assert_eq!("canonical".parse::<ParamsArg>().unwrap(), ParamsArg::Canonical);
        assert_eq!("file=a.txt".parse::<ParamsArg>().unwrap(), ParamsArg::File("a.txt".into()));
        assert!("generic".parse::<ParamsArg>().is_err());
    }
}
