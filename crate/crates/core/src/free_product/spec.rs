//! JSON factor specifications.
//!
//! ```json
//! {"type":"table","name":"Z2","elements":["0","1"],"mul":[[0,1],[1,0]],"inv":[0,1],"identity":0}
//! {"type":"free","rank":"omega","prefix":"e"}
//! {"type":"product","factors":[ ... ]}
//! ```

use serde::{Deserialize, Serialize};

use super::{Factor, FpError, FreeFactor, FreeProduct, TableGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RankSpec {
    Finite(u32),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorSpec {
    Table {
        name: String,
        elements: Vec<String>,
        mul: Vec<Vec<u32>>,
        inv: Vec<u32>,
        identity: u32,
    },
    Free {
        rank: RankSpec,
        prefix: String,
    },
    Product {
        factors: Vec<FactorSpec>,
    },
}

impl FactorSpec {
    pub fn from_json(text: &str) -> Result<Self, FpError> {
        serde_json::from_str(text).map_err(|e| FpError::InvalidSpec(e.to_string()))
    }

    pub fn build(&self) -> Result<Factor, FpError> {
        Ok(match self {
            FactorSpec::Table {
                name,
                elements,
                mul,
                inv,
                identity,
            } => Factor::Table(TableGroup::new(
                name.clone(),
                elements.clone(),
                mul.clone(),
                inv.clone(),
                *identity,
            )?),
            FactorSpec::Free { rank, prefix } => {
                let rank = match rank {
                    RankSpec::Finite(r) => Some(*r),
                    RankSpec::Named(s) if s == "omega" => None,
                    RankSpec::Named(s) => {
                        return Err(FpError::InvalidSpec(format!(
                            "rank must be an integer or \"omega\", got {s:?}"
                        )))
                    }
                };
                Factor::Free(FreeFactor::new(rank, prefix.clone())?)
            }
            FactorSpec::Product { factors } => Factor::Product(FreeProduct::new(
                factors.iter().map(FactorSpec::build).collect::<Result<_, _>>()?,
            )?),
        })
    }

    /// The ambient free product: a `product` spec directly, anything else as
    /// a one-factor product.
    pub fn build_product(&self) -> Result<FreeProduct, FpError> {
        match self.build()? {
            Factor::Product(p) => Ok(p),
            other => FreeProduct::new(vec![other]),
        }
    }

    pub fn from_factor(factor: &Factor) -> FactorSpec {
        match factor {
            Factor::Table(t) => FactorSpec::Table {
                name: t.name().to_string(),
                elements: t.element_names().to_vec(),
                mul: t.mul_table().to_vec(),
                inv: t.inv_table().to_vec(),
                identity: t.identity(),
            },
            Factor::Free(f) => FactorSpec::Free {
                rank: match f.rank() {
                    Some(r) => RankSpec::Finite(r),
                    None => RankSpec::Named("omega".into()),
                },
                prefix: f.prefix().to_string(),
            },
            Factor::Product(p) => FactorSpec::Product {
                factors: p.factors().iter().map(FactorSpec::from_factor).collect(),
            },
        }
    }
}
