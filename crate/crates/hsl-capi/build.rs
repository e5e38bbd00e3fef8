//! Generates the C header from the annotated sources into `include/hsl.h`
//! (kept in the tree so C consumers do not need the Rust toolchain).

use std::path::Path;

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets this");
    let header = Path::new(&crate_dir).join("include").join("hsl.h");
    std::fs::create_dir_all(header.parent().unwrap()).expect("include dir");
    let bindings = cbindgen::generate(&crate_dir).expect("header generation");
    bindings.write_to_file(&header);
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
