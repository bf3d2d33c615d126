#include <doctest.h>

#include "egnh/datasets.hpp"
#include "egnh/gof.hpp"
#include "egnh/result_document.hpp"
#include "egnh/sim.hpp"

using namespace egnh;

TEST_CASE("result documents round-trip losslessly for every payload kind") {
    Sample s = datasets::aarset();
    FitResult f = fit_submodel(s, SubModel::Exponential);
    GofReport g = gof(f, s);
    SimDesign d{EgnhParams(2, 1.5, 0.5, 2), {10}, 2, 7, FitMethod::ProfileLik, 1};
    SimResult r = run_sim(d);

    for (nlohmann::json payload :
         {to_json(f), to_json(g), to_json(r, d),
          nlohmann::json{{"rows", {{{"x", 0.1}, {"value", 1.0 / 3.0}}}}}}) {
        ResultDocument doc;
        doc.command = "test invocation";
        doc.inputs_digest = digest_hex("test");
        doc.payload = payload;
        ResultDocument back = parse_document(serialize(doc));
        CHECK(back == doc);
    }
}

TEST_CASE("digest is stable and input-sensitive") {
    CHECK(digest_hex("abc") == digest_hex("abc"));
    CHECK(digest_hex("abc") != digest_hex("abd"));
    CHECK(digest_hex("").size() == 16);
}
