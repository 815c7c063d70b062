//! JSON group literals, named constructions and the decision input document.

use crate::error::{KnotError, Result};
use crate::groupzoo::{
    build_E, build_H, build_P, build_Pprime, build_heisenberg_cover, build_semidirect_std, MatGL2,
};
use crate::permgroup::{close, Perm, PermGroup};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// `{ "degree": d, "generators": [[images...], ...] }`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupLiteral {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupLiteral {
    pub fn of(group: &PermGroup) -> GroupLiteral {
        GroupLiteral {
            degree: group.degree(),
            generators: group.generators().iter().map(Perm::images).collect(),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = parse_generators(self.degree, &self.generators, "generators")?;
        close(&gens, self.degree)
    }
}

fn parse_generators(degree: usize, arrays: &[Vec<usize>], at: &str) -> Result<Vec<Perm>> {
    arrays
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if a.len() != degree {
                return Err(KnotError::InvalidInput(format!(
                    "{at}[{i}]: expected {degree} images, found {}",
                    a.len()
                )));
            }
            Perm::new(a.clone()).map_err(|e| KnotError::InvalidInput(format!("{at}[{i}]: {e}")))
        })
        .collect()
}

/// A construction by name: `P<n>`, `P'<n>`, `E<n>`, `H<n>`, `C<m>`,
/// `semidirect-std` and `heisenberg-cover`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedConstruction {
    pub name: String,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub matrices: Vec<[[i64; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Literal(GroupLiteral),
    Named(NamedConstruction),
}

/// A built group together with the subgroup a construction singles out.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: PermGroup,
    /// The complement for `semidirect-std`, the kernel for
    /// `heisenberg-cover`.
    pub distinguished: Option<PermGroup>,
}

pub fn parse_matrices(p: usize, mats: &[[[i64; 2]; 2]]) -> Result<Vec<MatGL2>> {
    mats.iter()
        .map(|m| MatGL2::new(m[0][0], m[0][1], m[1][0], m[1][1], p as u64))
        .collect()
}

impl NamedConstruction {
    fn family(&self) -> Option<(&str, Option<usize>)> {
        let name = self.name.as_str();
        for prefix in ["P'", "P", "E", "H", "C"] {
            if let Some(rest) = name.strip_prefix(prefix) {
                if rest.is_empty() {
                    return Some((prefix, None));
                }
                if let Ok(k) = rest.parse::<usize>() {
                    return Some((prefix, Some(k)));
                }
            }
        }
        None
    }

    pub fn build(&self) -> Result<Built> {
        let need_p = || {
            self.p
                .ok_or_else(|| KnotError::InvalidInput(format!("{}: parameter p is required", self.name)))
        };
        match self.name.as_str() {
            "semidirect-std" => {
                let p = need_p()?;
                let (g, h) = build_semidirect_std(p, &parse_matrices(p, &self.matrices)?)?;
                return Ok(Built {
                    group: g,
                    distinguished: Some(h),
                });
            }
            "heisenberg-cover" => {
                let p = need_p()?;
                let ext = build_heisenberg_cover(p, &parse_matrices(p, &self.matrices)?)?;
                return Ok(Built {
                    group: ext.total.clone(),
                    distinguished: Some(ext.kernel.clone()),
                });
            }
            _ => {}
        }
        let Some((family, k)) = self.family() else {
            return Err(KnotError::UnknownConstruction(self.name.clone()));
        };
        let k = k.or(self.n).ok_or_else(|| {
            KnotError::InvalidInput(format!("{}: parameter n is required", self.name))
        })?;
        let group = match family {
            "C" => {
                if k == 0 {
                    return Err(KnotError::BadParameter("C0".into()));
                }
                close(&[Perm::from_fn(k, |x| (x + 1) % k)], k)?
            }
            "P'" => build_Pprime(k, need_p()?)?,
            "P" => build_P(k, need_p()?)?,
            "E" => build_E(k, need_p()?)?,
            "H" => build_H(k, need_p()?)?,
            _ => unreachable!(),
        };
        Ok(Built {
            group,
            distinguished: None,
        })
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<Built> {
        match self {
            GroupSpec::Literal(l) => Ok(Built {
                group: l.build()?,
                distinguished: None,
            }),
            GroupSpec::Named(n) => n.build(),
        }
    }
}

/// The input of a decision run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupSpec,
    #[serde(default)]
    pub stabilizer_point: usize,
    #[serde(default)]
    pub decomposition_groups: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    pub methods: Vec<String>,
}

/// A parsed document with its groups built.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub group: PermGroup,
    pub stabilizer: PermGroup,
    pub decomposition_groups: Vec<PermGroup>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument> {
        serde_json::from_str(text).map_err(|e| {
            KnotError::InvalidInput(format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn prepare(&self) -> Result<Prepared> {
        let group = self.group.build()?.group;
        if self.stabilizer_point >= group.degree() {
            return Err(KnotError::InvalidInput(format!(
                "stabilizer_point {} is outside 0..{}",
                self.stabilizer_point,
                group.degree()
            )));
        }
        let stabilizer = group.point_stabilizer(self.stabilizer_point);
        let decomposition_groups = self
            .decomposition_groups
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                let gens = parse_generators(group.degree(), gens, &format!("decomposition_groups[{i}]"))?;
                let d = close(&gens, group.degree())?;
                if !d.is_subgroup_of(&group) {
                    return Err(KnotError::InvalidInput(format!(
                        "decomposition_groups[{i}] is not a subgroup of the group"
                    )));
                }
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Prepared {
            group,
            stabilizer,
            decomposition_groups,
        })
    }

    /// SHA-256 of the canonical JSON serialization.
    pub fn canonical_hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("serializable").as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
