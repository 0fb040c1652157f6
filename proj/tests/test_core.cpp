#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bci/error.hpp"
#include "bci/io.hpp"
#include "bci/matrix.hpp"
#include "bci/types.hpp"

#include "helpers.hpp"

#include <cmath>

using namespace bci;
using testutil::expect_error;
using testutil::TempFile;

TEST_CASE("matrix basics") {
    const Matrix id = Matrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(trace(id) == 3.0);

    const Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
    const Matrix t = transpose(m);
    CHECK(t(0, 1) == 3.0);
    CHECK(t(1, 0) == 2.0);

    const Matrix sum = m + m;
    CHECK(sum(1, 1) == 8.0);
    const Matrix diff = sum - m;
    CHECK(diff == m);
    const Matrix scaled = 2.0 * m;
    CHECK(scaled == sum);

    CHECK(frobenius_norm(Matrix::from_rows({{3, 4}})) == doctest::Approx(5.0));
    CHECK(max_abs_diff(m, sum) == 4.0);
    CHECK(all_finite(m));
    Matrix bad = m;
    bad(0, 0) = std::nan("");
    CHECK_FALSE(all_finite(bad));
}

TEST_CASE("matrix shape mismatches are rejected") {
    const Matrix a(2, 2), b(2, 3);
    expect_error(Errc::dim_mismatch, [&] { (void)(a + b); });
    expect_error(Errc::dim_mismatch, [&] { (void)max_abs_diff(a, b); });
}

TEST_CASE("class labels keep their signed encoding") {
    CHECK(static_cast<int>(ClassLabel::left) == -1);
    CHECK(static_cast<int>(ClassLabel::right) == +1);
    CHECK(std::string(to_string(ClassLabel::left)) == "LEFT");
    CHECK(std::string(to_string(ClassLabel::right)) == "RIGHT");
}

TEST_CASE("marker codes and labels are a bijection") {
    CHECK(code_for(MarkerLabel::session_start) == 768);
    CHECK(code_for(MarkerLabel::left_cue) == 769);
    CHECK(code_for(MarkerLabel::right_cue) == 770);
    CHECK(code_for(MarkerLabel::cross) == 786);
    for (const auto label : {MarkerLabel::session_start, MarkerLabel::left_cue,
                             MarkerLabel::right_cue, MarkerLabel::cross}) {
        CHECK(label_for_code(code_for(label)) == label);
        CHECK(marker_label_from_string(to_string(label)) == label);
    }
    expect_error(Errc::parse_error, [] { (void)label_for_code(999); });
    expect_error(Errc::parse_error, [] { (void)marker_label_from_string("NO_SUCH_LABEL"); });
}

TEST_CASE("markers sort by time with code tiebreak") {
    MarkerStream markers{
        {4.0, kCodeLeftCue, MarkerLabel::left_cue},
        {0.0, kCodeSessionStart, MarkerLabel::session_start},
        {4.0, kCodeCross, MarkerLabel::cross},
        {3.0, kCodeCross, MarkerLabel::cross},
    };
    sort_markers(markers);
    CHECK(markers[0].label == MarkerLabel::session_start);
    CHECK(markers[1].time_s == 3.0);
    CHECK(markers[2].code == kCodeLeftCue);  // 769 before 786 at the same time
    CHECK(markers[3].code == kCodeCross);
}

namespace {

SignalBuffer ramp_buffer(std::size_t channels, std::size_t samples, double fs) {
    SignalBuffer b;
    b.sample_rate_hz = fs;
    b.channel_names = default_channel_names(channels);
    b.samples = Matrix(channels, samples);
    for (std::size_t ch = 0; ch < channels; ++ch)
        for (std::size_t i = 0; i < samples; ++i)
            b.samples(ch, i) = static_cast<double>(i) + 1000.0 * static_cast<double>(ch);
    return b;
}

} // namespace

TEST_CASE("slice_window index arithmetic") {
    const SignalBuffer b = ramp_buffer(2, 2048, 128.0);

    const Matrix w = slice_window(b, 10.0, 4.0);
    CHECK(w.rows() == 2);
    CHECK(w.cols() == 512);
    CHECK(w(0, 0) == 1280.0);   // first sample index 1280
    CHECK(w(0, 511) == 1791.0); // last sample index 1791
    CHECK(w(1, 0) == 2280.0);

    const Matrix whole = slice_window(b, 0.0, 2048.0 / 128.0);
    CHECK(whole == b.samples);

    const SignalBuffer small = ramp_buffer(1, 512, 128.0);
    expect_error(Errc::out_of_range, [&] { (void)slice_window(small, 3.0, 2.0); });
    expect_error(Errc::invalid_arg, [&] { (void)slice_window(small, 0.0, 0.0); });
    expect_error(Errc::invalid_arg, [&] { (void)slice_window(small, 0.0, -1.0); });
    expect_error(Errc::out_of_range, [&] { (void)slice_window(small, -0.5, 1.0); });
}

TEST_CASE("time_to_index rounds to nearest") {
    CHECK(time_to_index(10.0, 128.0) == 1280);
    CHECK(time_to_index(0.5, 128.0) == 64);
    CHECK(time_to_index(0.0039, 128.0) == 0);  // 0.4992 samples rounds down
    CHECK(time_to_index(0.0040, 128.0) == 1);  // 0.512 samples rounds up
}

TEST_CASE("default channel names") {
    const auto emotiv = default_channel_names(14);
    REQUIRE(emotiv.size() == 14);
    CHECK(emotiv.front() == "AF3");
    CHECK(emotiv.back() == "AF4");
    const auto generic = default_channel_names(3);
    CHECK(generic == std::vector<std::string>{"C1", "C2", "C3"});
}

TEST_CASE("signal buffer validation") {
    SignalBuffer b = ramp_buffer(2, 4, 128.0);
    validate(b); // well-formed

    SignalBuffer bad_rate = b;
    bad_rate.sample_rate_hz = 0.0;
    expect_error(Errc::invalid_arg, [&] { validate(bad_rate); });

    SignalBuffer bad_names = b;
    bad_names.channel_names.pop_back();
    expect_error(Errc::invalid_arg, [&] { validate(bad_names); });
}

TEST_CASE("signal csv minimal file") {
    TempFile f("core_minimal_signal.csv");
    testutil::spit(f.path(), "time,AF3,F7\n0,1.5,2.5\n0.0078125,3.5,4.5\n");
    const SignalBuffer b = read_signal_csv(f.path());
    CHECK(b.channel_count() == 2);
    CHECK(b.sample_count() == 2);
    CHECK(b.sample_rate_hz == doctest::Approx(128.0));
    CHECK(b.channel_names == std::vector<std::string>{"AF3", "F7"});
    CHECK(b.samples(0, 0) == 1.5);
    CHECK(b.samples(1, 1) == 4.5);
}

TEST_CASE("signal csv round trip is lossless within 1e-9") {
    bci::Rng64 rng(101);
    SignalBuffer b;
    b.sample_rate_hz = 128.0;
    b.channel_names = default_channel_names(14);
    b.samples = testutil::random_matrix(rng, 14, 512);

    TempFile f("core_roundtrip_signal.csv");
    write_signal_csv(b, f.path());
    const SignalBuffer back = read_signal_csv(f.path());
    REQUIRE(back.channel_count() == 14);
    REQUIRE(back.sample_count() == 512);
    CHECK(back.channel_names == b.channel_names);
    CHECK(back.sample_rate_hz == doctest::Approx(128.0).epsilon(1e-12));
    CHECK(max_abs_diff(back.samples, b.samples) < 1e-9);
}

TEST_CASE("signal csv rejects malformed input") {
    TempFile f("core_bad_signal.csv");

    SUBCASE("row with wrong field count") {
        testutil::spit(f.path(), "time,A,B,C\n0,1,2,3\n0.0078125,1,2\n");
        try {
            (void)read_signal_csv(f.path());
            FAIL_CHECK("expected NONUNIFORM_ROW");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::nonuniform_row);
            CHECK(std::string(e.what()).find(":3") != std::string::npos); // line number
        }
    }
    SUBCASE("single data row cannot define a rate") {
        testutil::spit(f.path(), "time,A\n0,1\n");
        expect_error(Errc::parse_error, [&] { (void)read_signal_csv(f.path()); });
    }
    SUBCASE("nonuniform time step") {
        testutil::spit(f.path(), "time,A\n0,1\n0.0078125,2\n0.02,3\n");
        expect_error(Errc::parse_error, [&] { (void)read_signal_csv(f.path()); });
    }
    SUBCASE("decreasing time") {
        testutil::spit(f.path(), "time,A\n0.5,1\n0.25,2\n0,3\n");
        expect_error(Errc::parse_error, [&] { (void)read_signal_csv(f.path()); });
    }
    SUBCASE("non-numeric value") {
        testutil::spit(f.path(), "time,A\n0,1\n0.0078125,oops\n");
        expect_error(Errc::parse_error, [&] { (void)read_signal_csv(f.path()); });
    }
    SUBCASE("missing header") {
        testutil::spit(f.path(), "");
        expect_error(Errc::parse_error, [&] { (void)read_signal_csv(f.path()); });
    }
}

TEST_CASE("marker csv reads, sorts, and validates the bijection") {
    TempFile f("core_markers.csv");

    SUBCASE("single marker") {
        testutil::spit(f.path(), "time,code,label\n10.0,769,LEFT_CUE\n");
        const MarkerStream m = read_markers_csv(f.path());
        REQUIRE(m.size() == 1);
        CHECK(m[0].time_s == 10.0);
        CHECK(m[0].code == 769);
        CHECK(m[0].label == MarkerLabel::left_cue);
    }
    SUBCASE("unsorted input comes back sorted") {
        testutil::spit(f.path(),
                       "time,code,label\n8.0,770,RIGHT_CUE\n0.0,768,SESSION_START\n4.0,769,LEFT_CUE\n");
        const MarkerStream m = read_markers_csv(f.path());
        REQUIRE(m.size() == 3);
        CHECK(m[0].time_s == 0.0);
        CHECK(m[1].time_s == 4.0);
        CHECK(m[2].time_s == 8.0);
    }
    SUBCASE("code-label mismatch is a parse error") {
        testutil::spit(f.path(), "time,code,label\n10.0,769,RIGHT_CUE\n");
        expect_error(Errc::parse_error, [&] { (void)read_markers_csv(f.path()); });
    }
    SUBCASE("round trip") {
        MarkerStream m{
            {0.0, kCodeSessionStart, MarkerLabel::session_start},
            {3.0, kCodeCross, MarkerLabel::cross},
            {4.0, kCodeLeftCue, MarkerLabel::left_cue},
        };
        write_markers_csv(m, f.path());
        const MarkerStream back = read_markers_csv(f.path());
        REQUIRE(back.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(back[i].time_s == m[i].time_s);
            CHECK(back[i].code == m[i].code);
            CHECK(back[i].label == m[i].label);
        }
    }
}

namespace {

CspModel sample_csp_model() {
    CspModel m;
    m.projection = Matrix::from_rows({{std::sqrt(2.0), -std::exp(1.0), 0.25},
                                      {1.0 / 3.0, std::sqrt(5.0), -7.125}});
    m.eigenvalues = {0.93, 0.11};
    m.channel_names = {"C1", "C2", "C3"};
    m.n_pairs = 1;
    m.ridge = 1e-9;
    return m;
}

} // namespace

TEST_CASE("csp model file round trip") {
    const CspModel m = sample_csp_model();
    TempFile f("core_csp.model");
    save_csp_model(m, f.path());

    const std::string content = testutil::slurp(f.path());
    CHECK(content.rfind("CSPMODEL v1\n2 3\n", 0) == 0);

    const CspModel back = load_csp_model(f.path());
    CHECK(max_abs_diff(back.projection, m.projection) < 1e-12);
    REQUIRE(back.eigenvalues.size() == 2);
    CHECK(back.eigenvalues[0] == doctest::Approx(0.93).epsilon(1e-13));
    CHECK(back.channel_names == m.channel_names);
    CHECK(back.n_pairs == 1);
    CHECK(back.ridge == doctest::Approx(1e-9).epsilon(1e-13));
}

TEST_CASE("lda model file round trip with irrational weights") {
    LdaModel m;
    m.weights = {std::sqrt(2.0), -std::acos(-1.0), std::log(3.0)};
    m.bias = -std::sqrt(7.0);
    m.score_scale = std::exp(0.5);
    TempFile f("core_lda.model");
    save_lda_model(m, f.path());
    const LdaModel back = load_lda_model(f.path());
    REQUIRE(back.weights.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(back.weights[i] - m.weights[i]) < 1e-12);
    CHECK(std::fabs(back.bias - m.bias) < 1e-12);
    CHECK(std::fabs(back.score_scale - m.score_scale) < 1e-12);
}

TEST_CASE("model files reject the wrong header, truncation, and bad dims") {
    TempFile f("core_bad.model");

    SUBCASE("unknown version") {
        testutil::spit(f.path(), "CSPMODEL v9\n2 3\n");
        expect_error(Errc::version_mismatch, [&] { (void)load_csp_model(f.path()); });
        testutil::spit(f.path(), "LDAMODEL v2\n1\n0\nbias 0\nscale 1\n");
        expect_error(Errc::version_mismatch, [&] { (void)load_lda_model(f.path()); });
    }
    SUBCASE("csp loaded as lda and vice versa") {
        save_csp_model(sample_csp_model(), f.path());
        expect_error(Errc::version_mismatch, [&] { (void)load_lda_model(f.path()); });
    }
    SUBCASE("truncated matrix body") {
        testutil::spit(f.path(), "CSPMODEL v1\n2 3\n1 2 3\n4 5\n");
        expect_error(Errc::parse_error, [&] { (void)load_csp_model(f.path()); });
    }
    SUBCASE("missing trailing lda lines") {
        testutil::spit(f.path(), "LDAMODEL v1\n2\n1 2\n");
        expect_error(Errc::parse_error, [&] { (void)load_lda_model(f.path()); });
    }
    SUBCASE("inconsistent declared dims") {
        testutil::spit(f.path(), "CSPMODEL v1\n3 2\n1 2\n3 4\n5 6\n");
        expect_error(Errc::dim_mismatch, [&] { (void)load_csp_model(f.path()); });
    }
    SUBCASE("pairs line disagreeing with rows") {
        testutil::spit(f.path(),
                       "CSPMODEL v1\n2 2\n1 0\n0 1\neigenvalues 0.9 0.1\nchannels C1 C2\npairs 3\nridge 0\n");
        expect_error(Errc::dim_mismatch, [&] { (void)load_csp_model(f.path()); });
    }
}

TEST_CASE("matrix file round trip") {
    bci::Rng64 rng(5);
    const Matrix m = testutil::random_matrix(rng, 4, 6);
    TempFile f("core_matrix.txt");
    write_matrix_file(m, f.path());
    const Matrix back = read_matrix_file(f.path());
    CHECK(max_abs_diff(back, m) < 1e-12);
}

TEST_CASE("formatted doubles survive the round trip exactly") {
    for (const double v : {1.0 / 3.0, std::sqrt(2.0), -1e-300, 6.02214076e23, 0.1}) {
        const std::string text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("error names match their screaming-case convention") {
    CHECK(std::string(errc_name(Errc::out_of_range)) == "OUT_OF_RANGE");
    CHECK(std::string(errc_name(Errc::too_few_trials)) == "TOO_FEW_TRIALS");
    CHECK(std::string(errc_name(Errc::sink_disconnected)) == "SINK_DISCONNECTED");
}
