//! Invariant tables keyed by divisor class and constraint algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::etale::{EtaleAlgebra, FactorInput};
use crate::gw::{parse_gw, BaseField, GwElement};
use crate::picard::{DivisorClass, SurfaceModel};
use crate::{Error, Result};

/// What a lookup does when an entry is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingPolicy {
    /// Treat the entry as 0 and record a warning.
    #[default]
    ZeroWithWarning,
    Error,
}

/// A stored invariant with its provenance tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub value: GwElement,
    pub source: String,
}

/// Invariants `N_{S, D, sigma}` of one surface over one base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    model: SurfaceModel,
    field: BaseField,
    policy: MissingPolicy,
    entries: BTreeMap<(DivisorClass, EtaleAlgebra), TableEntry>,
}

impl InvariantTable {
    pub fn new(model: SurfaceModel, field: BaseField) -> Self {
        InvariantTable {
            model,
            field,
            policy: MissingPolicy::default(),
            entries: BTreeMap::new(),
        }
    }

    pub fn with_policy(mut self, policy: MissingPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn policy(&self) -> MissingPolicy {
        self.policy
    }

    pub fn set_policy(&mut self, policy: MissingPolicy) {
        self.policy = policy;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DivisorClass, &EtaleAlgebra, &TableEntry)> {
        self.entries.iter().map(|((c, s), e)| (c, s, e))
    }

    /// The split algebra `k^n` with `n` the number of point conditions for `class`.
    pub fn split_sigma(&self, class: &DivisorClass) -> Result<EtaleAlgebra> {
        let n = self.model.n_points(class)?;
        if n < 0 {
            return Err(Error::Invalid(format!("class {class} imposes {n} point conditions")));
        }
        Ok(EtaleAlgebra::split(self.field, n as usize))
    }

    /// Checks that `sigma` lives over the table's field and has degree `n_points(class)`.
    pub fn check_sigma(&self, class: &DivisorClass, sigma: &EtaleAlgebra) -> Result<()> {
        if sigma.base() != self.field {
            return Err(Error::FieldMismatch {
                left: sigma.base().to_string(),
                right: self.field.to_string(),
            });
        }
        let n = self.model.n_points(class)?;
        if n < 0 || sigma.degree() != n as usize {
            return Err(Error::DegreeMismatch {
                expected: n.max(0) as usize,
                found: sigma.degree(),
            });
        }
        Ok(())
    }

    pub fn insert(
        &mut self,
        class: DivisorClass,
        sigma: EtaleAlgebra,
        value: GwElement,
        source: impl Into<String>,
    ) -> Result<()> {
        self.check_sigma(&class, &sigma)?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                left: value.field().to_string(),
                right: self.field.to_string(),
            });
        }
        if value.rank() < 0 {
            return Err(Error::Invalid(format!("entry for {class} has negative rank")));
        }
        self.entries.insert(
            (class, sigma),
            TableEntry {
                value,
                source: source.into(),
            },
        );
        Ok(())
    }

    /// The stored entry, if any.
    pub fn get(&self, class: &DivisorClass, sigma: &EtaleAlgebra) -> Result<Option<&TableEntry>> {
        self.check_sigma(class, sigma)?;
        Ok(self.entries.get(&(class.clone(), sigma.clone())))
    }

    /// The entry, or 0 with a warning pushed to `warnings` under the lenient policy.
    pub fn lookup(
        &self,
        class: &DivisorClass,
        sigma: &EtaleAlgebra,
        warnings: &mut Vec<String>,
    ) -> Result<GwElement> {
        match self.get(class, sigma)? {
            Some(e) => Ok(e.value.clone()),
            None => match self.policy {
                MissingPolicy::Error => Err(Error::MissingEntry {
                    class: class.to_string(),
                    sigma: sigma.to_string(),
                }),
                MissingPolicy::ZeroWithWarning => {
                    warnings.push(format!("missing entry for {class} with sigma {sigma}; using 0"));
                    Ok(GwElement::zero(self.field))
                }
            },
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_table()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawTable::from_table(self)).expect("tables serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawSigma {
    /// `"split"`, or an algebra string such as `"quad:-1,split:3"`.
    Text(String),
    Factors { factors: Vec<FactorInput> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Text(String),
    Element(GwElement),
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    class: DivisorClass,
    sigma: RawSigma,
    value: RawValue,
    #[serde(default)]
    source: String,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    model: SurfaceModel,
    field: BaseField,
    #[serde(default)]
    missing_policy: MissingPolicy,
    entries: Vec<RawEntry>,
}

impl RawTable {
    fn into_table(self) -> Result<InvariantTable> {
        let mut t = InvariantTable::new(self.model, self.field).with_policy(self.missing_policy);
        for e in self.entries {
            let sigma = match e.sigma {
                RawSigma::Text(s) if s.trim() == "split" => t.split_sigma(&e.class)?,
                RawSigma::Text(s) => EtaleAlgebra::parse(t.field, &s)?,
                RawSigma::Factors { factors } => EtaleAlgebra::from_inputs(t.field, &factors)?,
            };
            let value = match e.value {
                RawValue::Text(s) => parse_gw(&s, t.field, None)?,
                RawValue::Element(v) => v,
            };
            t.insert(e.class, sigma, value, e.source)?;
        }
        Ok(t)
    }

    fn from_table(t: &InvariantTable) -> Self {
        RawTable {
            model: t.model.clone(),
            field: t.field,
            missing_policy: t.policy,
            entries: t
                .entries
                .iter()
                .map(|((c, s), e)| RawEntry {
                    class: c.clone(),
                    sigma: RawSigma::Factors { factors: s.to_inputs() },
                    value: RawValue::Element(e.value.clone()),
                    source: e.source.clone(),
                })
                .collect(),
        }
    }
}
