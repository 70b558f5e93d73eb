#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include <genpr/io.hpp>
#include <genpr/plot.hpp>
#include <genpr/samplers.hpp>
#include <genpr/sweep.hpp>

namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("genpr_io_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::vector<unsigned char> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

genpr::PointCloudF random_features(std::size_t n, std::size_t d, unsigned seed) {
    return genpr::sample({genpr::SupportFamily::gaussian, 1.0, d}, n, {seed, 0}).cast<float>();
}

TEST(Fv32, RoundTripIsBitExact) {
    TempDir dir;
    const auto cloud = random_features(100, 64, 1);
    genpr::write_features(cloud, dir.file("x.fv32"));
    EXPECT_EQ(genpr::read_features(dir.file("x.fv32")), cloud);
    EXPECT_EQ(fs::file_size(dir.file("x.fv32")), 20u + 100u * 64u * 4u);
}

TEST(Fv32, HeaderLayout) {
    const auto cloud = genpr::PointCloudF::from_rows({{1.0f, -2.0f}});
    const auto enc = genpr::encode_features(cloud);
    const std::string expected_header("FV32\x01\x00\x00\x00\x01\x00\x00\x00\x00\x00\x00\x00\x02\x00\x00\x00", 20);
    EXPECT_EQ(enc.substr(0, 20), expected_header);
    EXPECT_EQ(enc.substr(20), std::string("\x00\x00\x80\x3f\x00\x00\x00\xc0", 8));
}

TEST(Fv32, RejectsMalformedInput) {
    const auto good = genpr::encode_features(random_features(3, 2, 2));

    auto bad_magic = good;
    bad_magic[0] = 'X';
    try {
        genpr::decode_features(bytes_of(bad_magic));
        FAIL();
    } catch (const genpr::FormatError& e) {
        EXPECT_EQ(e.offset(), 0u);
    }

    auto bad_version = good;
    bad_version[4] = 2;
    EXPECT_THROW(genpr::decode_features(bytes_of(bad_version)), genpr::FormatError);

    EXPECT_THROW(genpr::decode_features(bytes_of(good.substr(0, 10))), genpr::FormatError);
    try {
        genpr::decode_features(bytes_of(good.substr(0, good.size() - 1)));
        FAIL();
    } catch (const genpr::FormatError& e) {
        EXPECT_EQ(e.offset(), good.size() - 1);
    }
    EXPECT_THROW(genpr::decode_features(bytes_of(good + "x")), genpr::FormatError);

    auto zero_count = good;
    std::fill(zero_count.begin() + 8, zero_count.begin() + 16, '\0');
    EXPECT_THROW(genpr::decode_features(bytes_of(zero_count.substr(0, 20))), genpr::FormatError);

    auto overflow = good.substr(0, 20);
    std::fill(overflow.begin() + 8, overflow.begin() + 16, '\xff');
    EXPECT_THROW(genpr::decode_features(bytes_of(overflow)), genpr::FormatError);

    auto nan_value = good;
    nan_value[20 + 3] = '\x7f';
    nan_value[20 + 2] = '\xc0';
    try {
        genpr::decode_features(bytes_of(nan_value));
        FAIL();
    } catch (const genpr::FormatError& e) {
        EXPECT_EQ(e.offset(), 20u);
    }
}

TEST(Fv32, MissingFileIsIoError) {
    EXPECT_THROW(genpr::read_features("/nonexistent/genpr/x.fv32"), genpr::IoError);
}

TEST(Imu8, RoundTripIsBitExact) {
    TempDir dir;
    std::mt19937 gen(3);
    genpr::ImageTensor t{7, 5, 4, 3, std::vector<std::uint8_t>(7 * 5 * 4 * 3)};
    for (auto& p : t.pixels) {
        p = static_cast<std::uint8_t>(gen());
    }
    genpr::write_images(t, dir.file("x.imu8"));
    EXPECT_EQ(genpr::read_images(dir.file("x.imu8")), t);
    EXPECT_EQ(fs::file_size(dir.file("x.imu8")), 28u + t.pixels.size());
}

TEST(Imu8, RejectsMalformedInput) {
    genpr::ImageTensor t{1, 2, 2, 1, {1, 2, 3, 4}};
    const auto good = genpr::encode_images(t);
    auto bad_magic = good;
    bad_magic[3] = '9';
    EXPECT_THROW(genpr::decode_images(bytes_of(bad_magic)), genpr::FormatError);
    auto bad_channels = good;
    bad_channels[24] = 2;
    EXPECT_THROW(genpr::decode_images(bytes_of(bad_channels)), genpr::FormatError);
    EXPECT_THROW(genpr::decode_images(bytes_of(good.substr(0, good.size() - 2))), genpr::FormatError);
    auto zero = good;
    zero[8] = 0;
    EXPECT_THROW(genpr::decode_images(bytes_of(zero.substr(0, 28))), genpr::FormatError);
}

genpr::SweepResult small_result() {
    genpr::SweepConfig cfg;
    cfg.dims = {2, 3};
    cfg.radii = {0.9, 1.1};
    cfg.n = 40;
    cfg.k = 3;
    cfg.trials = 2;
    cfg.seed = 17;
    return genpr::run_synthetic_sweep(cfg);
}

TEST(Csv, OneRecord) {
    genpr::SweepResult r;
    r.records.push_back({"sphere_surface", 2, 1.0, 0, 10, 3, genpr::MetricReport{0.5, 1, 1, 1, 0.5, 1, 10, 10, 3}});
    const auto csv = genpr::to_csv(r);
    EXPECT_EQ(csv, "family,d,r,trial,n,k,precision,recall,c_precision,c_recall,sym_precision,sym_recall\n"
                   "sphere_surface,2,1,0,10,3,0.5,1,1,1,0.5,1\n");
}

TEST(Csv, ScaleHeader) {
    genpr::SweepResult r{genpr::SweepAxis::scale, {}};
    r.records.push_back({"feature", 0, 0.55, 0, 10, 3, genpr::MetricReport{0.1, 0.2, 0.3, 0.4, 0.1, 0.2, 10, 10, 3}});
    const auto csv = genpr::to_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "family,s,trial,n,k,precision,recall,c_precision,c_recall,sym_precision,sym_recall");
    EXPECT_NE(csv.find("0.55000000000000004"), std::string::npos);
}

TEST(Csv, ReadBackMatches) {
    TempDir dir;
    const auto result = small_result();
    genpr::write_csv(result, dir.file("s.csv"));
    const auto back = genpr::read_csv(dir.file("s.csv"));
    ASSERT_EQ(back.records.size(), result.records.size());
    EXPECT_EQ(back.axis, genpr::SweepAxis::radius);
    for (std::size_t i = 0; i < back.records.size(); ++i) {
        const auto& a = result.records[i];
        const auto& b = back.records[i];
        EXPECT_EQ(a.family, b.family);
        EXPECT_EQ(a.d, b.d);
        EXPECT_EQ(a.x, b.x);
        EXPECT_EQ(a.trial, b.trial);
        for (auto m : genpr::all_metrics) {
            EXPECT_NEAR(genpr::metric_value(a.metrics, m), genpr::metric_value(b.metrics, m), 1e-12);
        }
    }
}

TEST(Csv, RejectsGarbage) {
    EXPECT_THROW(genpr::parse_csv("a,b,c\n1,2,3\n"), genpr::FormatError);
    EXPECT_THROW(genpr::parse_csv(""), genpr::FormatError);
    const std::string header = genpr::csv_header(genpr::SweepAxis::radius) + "\n";
    EXPECT_THROW(genpr::parse_csv(header + "x,2,1,0\n"), genpr::FormatError);
    EXPECT_THROW(genpr::parse_csv(header + "x,two,1,0,1,1,1,1,1,1,1,1\n"), genpr::FormatError);
}

TEST(Svg, ParsesAsXmlWithOnePolylinePerSeries) {
    const auto result = small_result();
    const std::vector<genpr::MetricId> metrics = {genpr::MetricId::precision, genpr::MetricId::recall};
    const auto svg = genpr::to_svg(result, metrics);
    std::istringstream in(svg);
    boost::property_tree::ptree tree;
    ASSERT_NO_THROW(boost::property_tree::read_xml(in, tree));
    std::size_t polylines = 0, polygons = 0;
    for (const auto& [name, child] : tree.get_child("svg")) {
        polylines += name == "polyline";
        polygons += name == "polygon";
    }
    EXPECT_EQ(polylines, 4u); // 2 metrics x 2 dims
    EXPECT_EQ(polygons, 4u);
}

TEST(Svg, SummaryMeanAndDeviation) {
    genpr::SweepResult r;
    r.records.push_back({"x", 4, 1.0, 0, 10, 3, genpr::MetricReport{0.2, 0, 0, 0, 0, 0, 10, 10, 3}});
    r.records.push_back({"x", 4, 1.0, 1, 10, 3, genpr::MetricReport{0.6, 0, 0, 0, 0, 0, 10, 10, 3}});
    const std::vector<genpr::MetricId> m = {genpr::MetricId::precision};
    const auto s = genpr::summarize(r, m);
    ASSERT_EQ(s.size(), 1u);
    ASSERT_EQ(s[0].points.size(), 1u);
    EXPECT_NEAR(s[0].points[0].mean, 0.4, 1e-15);
    EXPECT_NEAR(s[0].points[0].sd, std::sqrt(0.08), 1e-15);
}

TEST(Svg, EmptyResultRejected) {
    const std::vector<genpr::MetricId> m = {genpr::MetricId::precision};
    EXPECT_THROW(genpr::to_svg(genpr::SweepResult{}, m), genpr::ConfigError);
}

} // namespace
