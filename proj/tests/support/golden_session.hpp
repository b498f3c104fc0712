#pragma once

// The scripted CLI session behind tests/golden/. Kept in one place so the
// recorded files, the unit test, and the acceptance gate can never drift
// apart: regenerate the golden files by replaying exactly this script.

#include <string>
#include <vector>

namespace bucketbook::testsupport {

inline std::vector<std::vector<std::string>> golden_session_script(const std::string& state) {
    return {
        {"init", "--state", state},
        {"define-resource", "credits", "--ttl", "2592000", "--k", "100", "--state", state},
        {"define-resource", "fuel", "--ttl", "1000", "--k", "4", "--state", state},
        {"balance", "alice", "credits", "--state", state},
        {"mint", "alice", "credits", "1000", "--state", state},
        {"records", "alice", "credits", "--state", state},
        {"advance", "100", "--state", state},
        {"mint", "alice", "credits", "500", "--state", state},
        {"mint", "alice", "fuel", "7", "--state", state},
        {"records", "alice", "credits", "--state", state},
        {"transfer", "alice", "bob", "credits", "1200", "--state", state},
        {"balance", "alice", "credits", "--state", state},
        {"balance", "bob", "credits", "--state", state},
        {"records", "bob", "credits", "--state", state},
        {"advance", "2592000", "--state", state},
        {"balance", "bob", "credits", "--state", state},
        {"prune", "bob", "credits", "--state", state},
        {"records", "bob", "credits", "--state", state},
        {"burn", "bob", "credits", "150", "--state", state},
        {"balance", "bob", "credits", "--state", state},
    };
}

} // namespace bucketbook::testsupport
