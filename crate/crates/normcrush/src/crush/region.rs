use super::cut::CutComplex;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How to pick the chosen region of a cut complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Selector {
    /// Lowest-index valid component.
    Auto,
    Index(usize),
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Selector> {
        if s == "auto" {
            return Ok(Selector::Auto);
        }
        s.parse().map(Selector::Index).map_err(|_| Error::InvalidInput(format!("region must be `auto` or an index, got {s:?}")))
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Auto => f.write_str("auto"),
            Selector::Index(i) => write!(f, "{i}"),
        }
    }
}

/// Why a component of the complement cannot be the chosen region, or `None`
/// if it can: no surface component may meet it from both sides.
pub fn region_obstruction(c: &CutComplex, component: usize) -> Option<String> {
    let surfaces = c.surface.components.len();
    let mut sides = vec![0usize; surfaces];
    for r in 0..c.remnants.len() {
        if c.remnant_component(r) == component {
            sides[c.remnants[r].surface_component] += 1;
        }
    }
    for (s, &n) in sides.iter().enumerate() {
        if n == 0 {
            continue;
        }
        if c.surface.components[s].two_sided == Some(false) {
            return Some(format!("surface component {s} is one-sided and meets component {component}"));
        }
        if n > 1 {
            return Some(format!("surface component {s} meets component {component} on both sides"));
        }
    }
    None
}

/// Sets the chosen region, checking that it meets every surface component on
/// at most one side.
pub fn choose_region(c: &CutComplex, selector: Selector) -> Result<CutComplex> {
    let index = match selector {
        Selector::Index(i) => {
            if i >= c.component_count {
                return Err(Error::InvalidInput(format!(
                    "region {i} out of range: the cut complex has {} components",
                    c.component_count
                )));
            }
            if let Some(why) = region_obstruction(c, i) {
                return Err(Error::NoValidRegion(why));
            }
            i
        }
        Selector::Auto => {
            let mut reasons = Vec::new();
            let mut found = None;
            for i in 0..c.component_count {
                match region_obstruction(c, i) {
                    None => {
                        found = Some(i);
                        break;
                    }
                    Some(why) => reasons.push(why),
                }
            }
            match found {
                Some(i) => i,
                None if c.component_count == 0 => {
                    return Err(Error::NoValidRegion("the cut complex is empty".into()));
                }
                None => return Err(Error::NoValidRegion(reasons.join("; "))),
            }
        }
    };
    let mut out = c.clone();
    out.region_index = Some(index);
    Ok(out)
}
