use serde::{Deserialize, Serialize};

use super::structure::{VLData, VLStructure};
use crate::error::{Error, Result};
use crate::lie_core::BasisRef;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    #[serde(default)]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DConfig {
    pub domain: Vec<String>,
    /// One row per domain element: the image as a coordinate vector, or
    /// omitted for `d = 0`.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub f: Vec<(BasisRef, Rational)>,
    #[serde(default)]
    pub k: u32,
    #[serde(default)]
    pub l: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketConfig {
    pub a: BasisRef,
    pub b: BasisRef,
    pub terms: Vec<TermConfig>,
}

/// Inline vertex Lie structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VLConfig {
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub d: DConfig,
    #[serde(default)]
    pub u0: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketConfig>,
}

impl VLConfig {
    pub fn to_data(&self) -> Result<VLData> {
        let names: Vec<String> = self.basis.iter().map(|b| b.name.clone()).collect();
        let r = names.len();
        let degrees = if self.basis.iter().all(|b| b.degree.is_some()) {
            Some(self.basis.iter().map(|b| b.degree.unwrap()).collect())
        } else if self.basis.iter().all(|b| b.degree.is_none()) {
            None
        } else {
            return Err(Error::Config("either every basis entry has a degree or none does".into()));
        };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut data = VLData::new(&refs, degrees);
        for (k, e) in self.d.domain.iter().enumerate() {
            let idx = BasisRef::Name(e.clone()).resolve(&names)?;
            data.domain.push(idx);
            let img = match &self.d.matrix {
                Some(m) => {
                    let row =
                        m.get(k).ok_or_else(|| Error::Config(format!("d.matrix has no row for domain element {e}")))?;
                    if row.len() != r {
                        return Err(Error::Config(format!("d.matrix row {k} has length {} not {r}", row.len())));
                    }
                    row.clone()
                }
                None => vec![Rational::zero(); r],
            };
            data.d.push(img);
        }
        if let Some(u0) = &self.u0 {
            let mut vs = Vec::new();
            for n in u0 {
                let i = BasisRef::Name(n.clone()).resolve(&names)?;
                vs.push(data.unit(i));
            }
            data.u0 = Some(vs);
        }
        for br in &self.brackets {
            let a = br.a.resolve(&names)?;
            let b = br.b.resolve(&names)?;
            for t in &br.terms {
                let mut f = vec![Rational::zero(); r];
                for (name, c) in &t.f {
                    f[name.resolve(&names)?] += c;
                }
                data.push(a, b, f, t.k, t.l);
            }
        }
        Ok(data)
    }

    pub fn build(&self, window: i64) -> Result<VLStructure> {
        VLStructure::certify(self.to_data()?, window)
    }

    pub fn build_uncertified(&self) -> Result<VLStructure> {
        VLStructure::uncertified(self.to_data()?)
    }

    /// Inverse of [`VLConfig::to_data`], for emitting builder tables.
    pub fn from_structure(s: &VLStructure) -> Self {
        let data = s.data();
        let names = &data.names;
        let basis = names
            .iter()
            .enumerate()
            .map(|(i, n)| BasisEntry { name: n.clone(), degree: data.degrees.as_ref().map(|d| d[i]) })
            .collect();
        let d = DConfig {
            domain: data.domain.iter().map(|&i| names[i].clone()).collect(),
            matrix: if data.d.iter().all(|v| v.iter().all(Rational::is_zero)) { None } else { Some(data.d.clone()) },
        };
        let mut keys: Vec<&(usize, usize)> = data.table.keys().collect();
        keys.sort();
        let brackets = keys
            .into_iter()
            .map(|&(a, b)| BracketConfig {
                a: BasisRef::Name(names[a].clone()),
                b: BasisRef::Name(names[b].clone()),
                terms: data.table[&(a, b)]
                    .iter()
                    .map(|t| TermConfig {
                        f: t.f
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(i, c)| (BasisRef::Name(names[i].clone()), c.clone()))
                            .collect(),
                        k: t.k,
                        l: t.l,
                    })
                    .collect(),
            })
            .collect();
        VLConfig { basis, d, u0: None, brackets }
    }
}
