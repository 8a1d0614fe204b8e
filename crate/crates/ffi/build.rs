use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=build.rs");
    let mut config = cbindgen::Config::default();
    config.enumeration.rename_variants = cbindgen::RenameRule::ScreamingSnakeCase;
    config.enumeration.prefix_with_name = true;
    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("HOPFSPECIES_H")
        .with_documentation(true)
        .with_cpp_compat(true)
        .generate()
        .expect("unable to generate C header")
        .write_to_file(dir.join("include/hopfspecies.h"));
}
