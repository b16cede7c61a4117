use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use refl3d_core::coeff::{Coefficient, Symbolic};
use refl3d_core::intertwiner::{parse_dump, write_block, write_header, Block, BlockKey, Tensor, TensorKind};

use crate::run::sha256_hex;

/// Solved blocks on disk, one file per block at `<dir>/<tensor>/<P>_<Q>.blk`.
pub struct BlockCache {
    dir: PathBuf,
}

pub fn block_file(kind: TensorKind, key: BlockKey) -> String {
    format!("{}/{}_{}.blk", kind.name(), key.p, key.q)
}

pub fn block_text(kind: TensorKind, params: &str, block: &Block<Coefficient>) -> String {
    let mut s = write_header(kind, params);
    s.push_str(&write_block(block));
    s
}

impl BlockCache {
    pub fn new(dir: &Path) -> Self {
        BlockCache { dir: dir.to_path_buf() }
    }

    /// Loads every cached block of `t` written for the same parameters.
    /// Files for other parameters or that fail to parse are ignored.
    pub fn preload(&self, t: &Tensor<Symbolic>) -> usize {
        let params = t.params().describe();
        let Ok(entries) = fs::read_dir(self.dir.join(t.kind.name())) else { return 0 };
        let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        let mut n = 0;
        for path in paths {
            let Ok(text) = fs::read_to_string(&path) else { continue };
            let Ok(d) = parse_dump(&text) else { continue };
            if d.kind != t.kind || d.params != params || d.blocks.len() != 1 {
                continue;
            }
            if let Ok(b) = Block::from_dump(t.kind, &d.blocks[0]) {
                t.preload(b);
                n += 1;
            }
        }
        n
    }

    /// Writes every materialized block of `t` and refreshes the cache
    /// manifest.
    pub fn store(&self, t: &Tensor<Symbolic>) -> io::Result<()> {
        let params = t.params().describe();
        for key in t.cached_keys() {
            let Ok(block) = t.block(key) else { continue };
            let path = self.dir.join(block_file(t.kind, key));
            let text = block_text(t.kind, &params, &block);
            if fs::read_to_string(&path).ok().as_deref() == Some(text.as_str()) {
                continue;
            }
            fs::create_dir_all(path.parent().unwrap())?;
            fs::write(&path, text)?;
        }
        self.write_manifest()
    }

    fn write_manifest(&self) -> io::Result<()> {
        let mut hashes = BTreeMap::new();
        for kind in [TensorKind::S, TensorKind::J] {
            let Ok(entries) = fs::read_dir(self.dir.join(kind.name())) else { continue };
            for e in entries.flatten() {
                let path = e.path();
                if path.extension().is_some_and(|x| x == "blk") {
                    let rel = format!("{}/{}", kind.name(), e.file_name().to_string_lossy());
                    hashes.insert(rel, sha256_hex(&fs::read(&path)?));
                }
            }
        }
        let mut s = String::from("format=1\n");
        for (rel, h) in hashes {
            s.push_str(&format!("block.{rel}=sha256:{h}\n"));
        }
        fs::write(self.dir.join("manifest.txt"), s)
    }
}
