//! Top-down selection: one children query per level, outermost first.

use crate::error::{Error, Result};
use crate::gazetteer::{Gazetteer, LocationNode, ResolvedLocation};

/// A cascade selection in progress.
///
/// `select` returns the next state and leaves `self` untouched, so every
/// intermediate state can be inspected. Changing an earlier choice means
/// starting a new session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeSession<'g> {
    gazetteer: &'g Gazetteer,
    selections: Vec<String>,
    current_options: Vec<LocationNode>,
    query_count: usize,
}

impl<'g> CascadeSession<'g> {
    /// Opens the session by querying the top-level options.
    pub fn start(gazetteer: &'g Gazetteer) -> Result<Self> {
        let current_options: Vec<LocationNode> =
            gazetteer.children(None)?.into_iter().cloned().collect();
        if current_options.is_empty() {
            return Err(Error::EmptyGazetteer);
        }
        Ok(CascadeSession {
            gazetteer,
            selections: Vec::new(),
            current_options,
            query_count: 1,
        })
    }

    pub fn select(&self, code: &str) -> Result<Self> {
        if self.is_complete() {
            return Err(Error::SessionComplete);
        }
        if !self.current_options.iter().any(|n| n.code == code) {
            return Err(Error::InvalidChoice(code.to_string()));
        }
        let mut selections = self.selections.clone();
        selections.push(code.to_string());
        let (current_options, query_count) = if selections.len() == self.gazetteer.depth() {
            (Vec::new(), self.query_count)
        } else {
            let options = self
                .gazetteer
                .children(Some(code))?
                .into_iter()
                .cloned()
                .collect();
            (options, self.query_count + 1)
        };
        Ok(CascadeSession {
            gazetteer: self.gazetteer,
            selections,
            current_options,
            query_count,
        })
    }

    pub fn gazetteer(&self) -> &'g Gazetteer {
        self.gazetteer
    }

    /// Codes chosen so far, outermost first.
    pub fn selections(&self) -> &[String] {
        &self.selections
    }

    /// Options for the next unselected level; empty once complete.
    pub fn current_options(&self) -> &[LocationNode] {
        &self.current_options
    }

    /// Children queries issued so far.
    pub fn query_count(&self) -> usize {
        self.query_count
    }

    pub fn is_complete(&self) -> bool {
        self.selections.len() == self.gazetteer.depth()
    }

    pub fn selected_path(&self) -> Result<ResolvedLocation> {
        match self.selections.last() {
            Some(leaf) if self.is_complete() => self.gazetteer.resolved_path(leaf),
            _ => Err(Error::Incomplete),
        }
    }

    /// Walk the ancestor chain of `leaf` from a fresh session.
    pub fn walk_to(gazetteer: &'g Gazetteer, leaf: &str) -> Result<Self> {
        let node = gazetteer.node(leaf)?;
        if !gazetteer.is_leaf(node) {
            return Err(Error::NotLeaf(leaf.to_string()));
        }
        let mut session = Self::start(gazetteer)?;
        for step in gazetteer.ancestors(leaf)? {
            session = session.select(&step.code)?;
        }
        Ok(session)
    }
}
