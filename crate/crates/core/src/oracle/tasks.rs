use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, Error, Result};
use crate::model::Money;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Manual,
    Ai,
    Hybrid,
}

impl TaskKind {
    /// Fraction of the automation rate that applies to this kind of task.
    fn automation_share(self) -> f64 {
        match self {
            TaskKind::Manual => 0.0,
            TaskKind::Ai => 1.0,
            TaskKind::Hybrid => 0.5,
        }
    }
}

/// A contracted unit of work and the internal costs it carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub id: String,
    pub kind: TaskKind,
    pub legal_cost: Money,
    pub organisation_cost: Money,
    /// Stored verbatim; never interpreted.
    #[serde(default)]
    pub contract_terms: BTreeMap<String, String>,
}

impl TaskSpec {
    pub fn new(id: impl Into<String>, kind: TaskKind, legal_cost: Money, organisation_cost: Money) -> Result<Self> {
        let task = TaskSpec {
            id: id.into(),
            kind,
            legal_cost,
            organisation_cost,
            contract_terms: BTreeMap::new(),
        };
        task.validate()?;
        Ok(task)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("legal_cost", self.legal_cost)?;
        non_negative("organisation_cost", self.organisation_cost)?;
        Ok(())
    }

    /// Legal plus organisation cost.
    pub fn internal_cost(&self) -> Money {
        self.legal_cost + self.organisation_cost
    }
}

/// One round of automation. AI tasks shed `automation_rate` of their legal
/// and organisation costs, hybrid tasks half that, manual tasks nothing.
/// Operational uncertainty lives on the cost breakdowns and is untouched.
pub fn distribute_tasks(tasks: &[TaskSpec], automation_rate: f64) -> Result<Vec<TaskSpec>> {
    if !(0.0..=1.0).contains(&automation_rate) {
        return Err(Error::domain(
            "automation_rate",
            automation_rate,
            "must lie in [0, 1]",
        ));
    }
    Ok(tasks
        .iter()
        .map(|t| {
            let keep = 1.0 - automation_rate * t.kind.automation_share();
            TaskSpec {
                legal_cost: t.legal_cost * keep,
                organisation_cost: t.organisation_cost * keep,
                ..t.clone()
            }
        })
        .collect())
}
