//! Versioned JSON checkpoints: architecture, parameters, optimizer moments.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::adam::AdamState;
use super::net::NetSpec;
use super::tensor::ParamSet;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub spec: NetSpec,
    pub params: ParamSet,
    pub optimizer: Option<AdamState>,
}

impl Checkpoint {
    pub fn new(spec: NetSpec, params: ParamSet, optimizer: Option<AdamState>) -> Self {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            spec,
            params,
            optimizer,
        }
    }
}

pub fn save_checkpoint(path: &Path, checkpoint: &Checkpoint) -> io::Result<()> {
    let json = serde_json::to_string(checkpoint).expect("checkpoint serialization cannot fail");
    fs::write(path, json)
}

pub fn load_checkpoint(path: &Path) -> io::Result<Checkpoint> {
    let data = fs::read_to_string(path)?;
    let ckpt: Checkpoint = serde_json::from_str(&data)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    if ckpt.version != CHECKPOINT_VERSION {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("unsupported checkpoint version {}", ckpt.version),
        ));
    }
    Ok(ckpt)
}
