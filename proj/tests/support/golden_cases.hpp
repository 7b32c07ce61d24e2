#ifndef VCOALG_TESTS_GOLDEN_CASES_HPP
#define VCOALG_TESTS_GOLDEN_CASES_HPP

// The CLI invocations covered by golden-file tests. Each case names the
// golden file its stdout must match; cases with an output file also pin
// the produced file's bytes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef VCOALG_CLI_PATH
#error "VCOALG_CLI_PATH must be defined"
#endif
#ifndef VCOALG_SOURCE_DIR
#error "VCOALG_SOURCE_DIR must be defined"
#endif

namespace vctest {

struct GoldenCase {
    std::string name;
    std::string args;        // with {SRC} and {TMP} placeholders
    std::string out_file;    // produced file relative to {TMP}, "" if none
    int expected_exit = 0;
};

inline std::vector<GoldenCase> golden_cases() {
    return {
        {"space-check", "space check --in {SRC}/samples/three_point.json", "", 0},
        {"functor-parse", "functor parse --expr \"V . (C(two) * Id)\"", "", 0},
        {"functor-apply",
         "functor apply --expr \"C(two) * Id\" --space {SRC}/samples/sierpinski.json "
         "--env two={SRC}/samples/discrete2.json",
         "", 0},
        {"vietoris-lower", "vietoris build --space {SRC}/samples/sierpinski.json --variant lower", "", 0},
        {"vietoris-compact",
         "vietoris build --space {SRC}/samples/three_point.json --variant compact", "", 0},
        {"vietoris-connected",
         "vietoris build --space {SRC}/samples/sierpinski.json --variant compact-connected", "", 0},
        {"witness-classic", "witness classic-vietoris", "", 0},
        {"witness-monocone", "witness monocone --space {SRC}/samples/discrete2.json", "", 0},
        {"terminal-seq",
         "terminal-seq --functor \"C(two)*Id\" --steps 3 --env two={SRC}/samples/discrete2.json", "",
         0},
        {"behaviour",
         "behaviour --coalg {SRC}/samples/stream_ab.json --depth 2 "
         "--env two={SRC}/samples/discrete2.json",
         "", 0},
        {"equalizer",
         "equalizer --h1 {SRC}/samples/hom_swap1.json --h2 {SRC}/samples/hom_swap2.json", "", 0},
        {"coreflect-vplus", "coreflect --sigma v+ --coalg {SRC}/samples/vcoalg_xyz.json", "", 0},
        {"coreflect-vc", "coreflect --sigma vc --coalg {SRC}/samples/vcoalg_disconnected.json", "", 0},
        {"ball-simulate-csv",
         "ball simulate --p 0 --v 5 --bounces 3 --step 0.1 --out {TMP}/traj.csv", "traj.csv", 0},
        {"ball-simulate-svg",
         "ball simulate --p 0 --v 5 --bounces 2 --step 0.05 --out {TMP}/traj.svg", "traj.svg", 0},
        {"ball-nondet", "ball nondet --p 5 --v 0 --depth 2 --samples 1 --lo 0.5 --hi 0.7", "", 0},
        {"ball-stability", "ball stability --p 5 --v 0 --delta 0.001 --horizon 1.0 --n 64", "", 0},
        {"show-config", "--show-config", "", 0},
    };
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

inline std::string expand_placeholders(std::string s, const std::string& tmp) {
    auto replace_all = [&](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("{SRC}", VCOALG_SOURCE_DIR);
    replace_all("{TMP}", tmp);
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RunResult run_cli(const std::string& args, const std::string& tmp) {
    std::string out_path = tmp + "/stdout.txt";
    std::string cmd = std::string(VCOALG_CLI_PATH) + " " + expand_placeholders(args, tmp) + " > " +
                      out_path + " 2> " + tmp + "/stderr.txt";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    r.out = read_file(out_path);
    return r;
}

inline std::string golden_path(const std::string& name) {
    return std::string(VCOALG_SOURCE_DIR) + "/tests/golden/" + name;
}

} // namespace vctest

#endif
