//! Persistent sessions: a ring, named objects, and the log of commands that
//! created them. Replaying the log must reproduce the file byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tiltlab_core::fpmod::ModuleJson;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Object {
    Module { module: ModuleJson },
    Ideal { generators: Vec<String> },
    Topology { basis: Vec<String> },
    Thomason { basis: Vec<String> },
    Tree { ideals: Vec<String>, depth: usize },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Module { .. } => "module",
            Object::Ideal { .. } => "ideal",
            Object::Topology { .. } => "topology",
            Object::Thomason { .. } => "thomason",
            Object::Tree { .. } => "tree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub schema: u32,
    pub ring: Option<String>,
    pub objects: BTreeMap<String, Object>,
    /// Argument vectors (without the program name and global flags).
    pub log: Vec<Vec<String>>,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            schema: SCHEMA,
            ring: None,
            objects: BTreeMap::new(),
            log: Vec::new(),
        }
    }
}

impl Session {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("session serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Session = serde_json::from_str(text).context("malformed session file")?;
        if s.schema != SCHEMA {
            bail!("unsupported session schema {} (expected {SCHEMA})", s.schema);
        }
        Ok(s)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading session {}", path.display()))?;
        Session::from_json(&text)
    }

    /// Missing files start an empty session.
    pub fn read_or_default(path: &Path) -> Result<Self> {
        if path.exists() {
            Session::read(path)
        } else {
            Ok(Session::default())
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("writing session {}", path.display()))
    }

    /// Pins the session ring on first use; later objects must share it.
    pub fn bind_ring(&mut self, ring: &str) -> Result<()> {
        match &self.ring {
            Some(r) if r != ring => bail!("ring mismatch: session ring is {r}, object ring is {ring}"),
            Some(_) => Ok(()),
            None => {
                self.ring = Some(ring.to_string());
                Ok(())
            }
        }
    }

    pub fn insert(&mut self, ring: &str, name: &str, object: Object, argv: Vec<String>) -> Result<()> {
        self.bind_ring(ring)?;
        self.objects.insert(name.to_string(), object);
        self.log.push(argv);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Object> {
        self.objects
            .get(name)
            .with_context(|| format!("no object named `{name}` in the session"))
    }
}
