fn main() {
    std::process::exit(meshfree_taylor::cli::run(std::env::args_os()));
}
