use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("qint.h");
    std::fs::create_dir_all(header.parent().unwrap()).expect("create include dir");

    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {
            // rustc will report the syntax error itself; keep the stale
            // header rather than failing the build twice
        }
        Err(err) => panic!("cbindgen failed: {err}"),
    }

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
