fn main() {
    std::process::exit(sepsearch::run(std::env::args_os().collect()));
}
