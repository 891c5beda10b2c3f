use std::collections::BTreeSet;

use crate::model::ProfileId;

/// A variant of the ADL: the base language or an extension of it that
/// enables extra element keywords and contributes extra checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageProfile {
    pub id: ProfileId,
    pub extra_elements: BTreeSet<&'static str>,
    pub extra_checks: BTreeSet<&'static str>,
}

impl LanguageProfile {
    pub fn base() -> Self {
        LanguageProfile {
            id: ProfileId::Base,
            extra_elements: BTreeSet::new(),
            extra_checks: BTreeSet::new(),
        }
    }

    pub fn scheduled() -> Self {
        let base = LanguageProfile::base();
        LanguageProfile {
            id: ProfileId::Scheduled,
            extra_elements: base.extra_elements.into_iter().chain(["schedule"]).collect(),
            extra_checks: base.extra_checks.into_iter().chain(["C007"]).collect(),
        }
    }

    pub fn of(id: ProfileId) -> Self {
        match id {
            ProfileId::Base => LanguageProfile::base(),
            ProfileId::Scheduled => LanguageProfile::scheduled(),
        }
    }

    pub fn allows_element(&self, keyword: &str) -> bool {
        self.extra_elements.contains(keyword)
    }

    /// Whether every model accepted by `other` is accepted by `self`.
    pub fn extends(&self, other: &LanguageProfile) -> bool {
        self.extra_elements.is_superset(&other.extra_elements)
            && self.extra_checks.is_superset(&other.extra_checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheduled_extends_base() {
        let (b, s) = (LanguageProfile::base(), LanguageProfile::scheduled());
        assert!(s.extends(&b));
        assert!(!b.extends(&s));
        assert!(s.allows_element("schedule"));
        assert!(!b.allows_element("schedule"));
        assert!(s.extra_checks.contains("C007"));
    }
}
