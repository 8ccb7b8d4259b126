//! Writes the generated module and object corpora of a ring into a
//! directory, one JSON file per indecomposable, for use with `--corpus`.
//!
//! ```text
//! cargo run --example export_corpus -- preset:truncated_poly,p=2,n=2 data/presets/r2
//! ```

use std::path::PathBuf;

use anyhow::{bail, Context};
use homcat::ar::{ar_corpus, module_corpus, CorpusOptions};
use homcat::io::{to_pretty, Loader};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [ring, dir] = args.as_slice() else {
        bail!("usage: export_corpus RING DIR");
    };
    let dir = PathBuf::from(dir);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut loader = Loader::new();
    let base = loader.ring_arg(ring)?;
    let opts = CorpusOptions::default();
    let mut written = 0;
    for (i, m) in module_corpus(&base, &opts)?.iter().enumerate() {
        let path = dir.join(format!("module_{i:03}.json"));
        std::fs::write(&path, to_pretty(&loader.module_value(m, true)))?;
        written += 1;
    }
    for (i, x) in ar_corpus(&base, &opts)?.objects().enumerate() {
        let path = dir.join(format!("object_{i:03}.json"));
        std::fs::write(&path, to_pretty(&loader.morph_value(x, true)))?;
        written += 1;
    }
    println!("wrote {written} files to {}", dir.display());
    Ok(())
}
