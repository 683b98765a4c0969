use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::StringFunctor;

/// The algebraic models of change of groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Model {
    EilenbergMoore,
    KoszulI,
    KoszulII,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::EilenbergMoore, Model::KoszulI, Model::KoszulII];

    pub fn parse(s: &str) -> Option<Model> {
        Model::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Model::EilenbergMoore => "EilenbergMoore",
            Model::KoszulI => "KoszulI",
            Model::KoszulII => "KoszulII",
        };
        f.write_str(s)
    }
}

/// Which algebraic functor models each of `i_*`, `i^*`, `i_!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceTable {
    pub model: Model,
    pub assignment: BTreeMap<String, StringFunctor>,
    pub note: Option<String>,
}

pub const TOPOLOGICAL: [&str; 3] = ["i_*", "i^*", "i_!"];

impl CorrespondenceTable {
    pub fn get(&self, topological: &str) -> Option<StringFunctor> {
        self.assignment.get(topological).copied()
    }

    /// The assigned functors in the order `i_*, i^*, i_!`.
    pub fn slice(&self) -> [StringFunctor; 3] {
        TOPOLOGICAL.map(|t| self.assignment[t])
    }

    /// Consecutive in the string, in left-to-right adjoint order.
    pub fn is_consecutive(&self) -> bool {
        let idx = self.slice().map(StringFunctor::index);
        idx[1] == idx[0] + 1 && idx[2] == idx[1] + 1
    }

    /// Left members of the two adjacent pairs inside the slice.
    pub fn pair_lefts(&self) -> [StringFunctor; 2] {
        let s = self.slice();
        [s[0], s[1]]
    }
}

pub fn correspondence(model: Model) -> CorrespondenceTable {
    use StringFunctor::*;
    let (fs, note) = match model {
        Model::EilenbergMoore | Model::KoszulI => (
            [ThetaDagger, ThetaLowerStar, ThetaUpperStar],
            Some(
                "the adjoint triple display in this model writes θ^! for the left adjoint of θ_*; \
                 the string of adjunctions and the general assembly give θ^†, which is used here"
                    .to_string(),
            ),
        ),
        Model::KoszulII => ([ThetaUpperStar, ThetaShriekLower, ThetaShriekUpper], None),
    };
    let assignment = TOPOLOGICAL
        .iter()
        .zip(fs)
        .map(|(t, f)| (t.to_string(), f))
        .collect();
    CorrespondenceTable {
        model,
        assignment,
        note,
    }
}
