#include "bnn/schedule.hpp"

#include "bnn/errors.hpp"

namespace bnn {

namespace {

// kQuarterCos[i] = round(2^31 * cos(i * pi / 512)), i = 0..256: one quarter
// period in Q31, monotone nonincreasing, exact 1.0 and 0.0 at the ends.
constexpr std::uint32_t kTableSteps = 256;
constexpr std::uint64_t kQuarterCos[kTableSteps + 1] = {
    2147483648u, 2147443222u, 2147321946u, 2147119825u, 2146836866u, 2146473080u, 2146028480u, 2145503083u,
    2144896910u, 2144209982u, 2143442326u, 2142593971u, 2141664948u, 2140655293u, 2139565043u, 2138394240u,
    2137142927u, 2135811153u, 2134398966u, 2132906420u, 2131333572u, 2129680480u, 2127947206u, 2126133817u,
    2124240380u, 2122266967u, 2120213651u, 2118080511u, 2115867626u, 2113575080u, 2111202959u, 2108751352u,
    2106220352u, 2103610054u, 2100920556u, 2098151960u, 2095304370u, 2092377892u, 2089372638u, 2086288720u,
    2083126254u, 2079885360u, 2076566160u, 2073168777u, 2069693342u, 2066139983u, 2062508835u, 2058800036u,
    2055013723u, 2051150040u, 2047209133u, 2043191150u, 2039096241u, 2034924562u, 2030676269u, 2026351522u,
    2021950484u, 2017473321u, 2012920201u, 2008291295u, 2003586779u, 1998806829u, 1993951625u, 1989021350u,
    1984016189u, 1978936331u, 1973781967u, 1968553292u, 1963250501u, 1957873796u, 1952423377u, 1946899451u,
    1941302225u, 1935631910u, 1929888720u, 1924072871u, 1918184581u, 1912224073u, 1906191570u, 1900087301u,
    1893911494u, 1887664383u, 1881346202u, 1874957189u, 1868497586u, 1861967634u, 1855367581u, 1848697674u,
    1841958164u, 1835149306u, 1828271356u, 1821324572u, 1814309216u, 1807225553u, 1800073849u, 1792854372u,
    1785567396u, 1778213194u, 1770792044u, 1763304224u, 1755750017u, 1748129707u, 1740443581u, 1732691928u,
    1724875040u, 1716993211u, 1709046739u, 1701035922u, 1692961062u, 1684822463u, 1676620432u, 1668355276u,
    1660027308u, 1651636841u, 1643184191u, 1634669676u, 1626093616u, 1617456335u, 1608758157u, 1599999411u,
    1591180426u, 1582301533u, 1573363068u, 1564365367u, 1555308768u, 1546193612u, 1537020244u, 1527789007u,
    1518500250u, 1509154322u, 1499751576u, 1490292364u, 1480777044u, 1471205974u, 1461579514u, 1451898025u,
    1442161874u, 1432371426u, 1422527051u, 1412629117u, 1402678000u, 1392674072u, 1382617710u, 1372509294u,
    1362349204u, 1352137822u, 1341875533u, 1331562723u, 1321199781u, 1310787095u, 1300325060u, 1289814068u,
    1279254516u, 1268646800u, 1257991320u, 1247288478u, 1236538675u, 1225742318u, 1214899813u, 1204011567u,
    1193077991u, 1182099496u, 1171076495u, 1160009405u, 1148898640u, 1137744621u, 1126547765u, 1115308496u,
    1104027237u, 1092704411u, 1081340445u, 1069935768u, 1058490808u, 1047005996u, 1035481766u, 1023918550u,
    1012316784u, 1000676905u, 988999351u, 977284562u, 965532978u, 953745043u, 941921200u, 930061894u,
    918167572u, 906238681u, 894275671u, 882278992u, 870249095u, 858186435u, 846091463u, 833964638u,
    821806413u, 809617249u, 797397602u, 785147934u, 772868706u, 760560380u, 748223418u, 735858287u,
    723465451u, 711045377u, 698598533u, 686125387u, 673626408u, 661102068u, 648552838u, 635979190u,
    623381598u, 610760536u, 598116479u, 585449903u, 572761285u, 560051104u, 547319836u, 534567963u,
    521795963u, 509004318u, 496193509u, 483364019u, 470516330u, 457650927u, 444768294u, 431868915u,
    418953276u, 406021865u, 393075166u, 380113669u, 367137861u, 354148230u, 341145265u, 328129457u,
    315101295u, 302061269u, 289009871u, 275947592u, 262874923u, 249792358u, 236700388u, 223599506u,
    210490206u, 197372981u, 184248325u, 171116733u, 157978697u, 144834714u, 131685278u, 118530885u,
    105372028u, 92209205u, 79042909u, 65873638u, 52701887u, 39528151u, 26352928u, 13176712u,
    0u,
};

// Table lookup of cos(pi/2 * x / t) in Q31 with linear interpolation;
// requires 0 <= x <= t.
std::uint64_t quarter_cos_q31(std::uint64_t x, std::uint64_t t) {
    const std::uint64_t num = x * kTableSteps;
    const std::uint64_t idx = num / t;
    const std::uint64_t rem = num % t;
    if (rem == 0) return kQuarterCos[idx];
    return (kQuarterCos[idx] * (t - rem) + kQuarterCos[idx + 1] * rem) / t;
}

} // namespace

FixedProb cosine_flip_prob(std::uint64_t t_cur, std::uint64_t t_i, FixedProb p_min,
                           FixedProb p_max) {
    if (t_i == 0) throw ValueError("cosine schedule: zero period");
    if (t_cur > t_i) throw ValueError("cosine schedule: t_cur beyond period");
    if (p_min.threshold > p_max.threshold) {
        throw ValueError("cosine schedule: p_min above p_max");
    }
    if (t_i > (std::uint64_t{1} << 32)) throw ValueError("cosine schedule: period too large");
    // w = 2^32 * (1 + cos(pi * t_cur / t_i)) / 2, in [0, 2^32].
    std::uint64_t w;
    if (2 * t_cur <= t_i) {
        w = (std::uint64_t{1} << 31) + quarter_cos_q31(2 * t_cur, t_i);
    } else {
        w = (std::uint64_t{1} << 31) - quarter_cos_q31(2 * (t_i - t_cur), t_i);
    }
    const std::uint64_t diff = p_max.threshold - p_min.threshold;
    return {static_cast<std::uint32_t>(p_min.threshold + ((diff * w) >> 32))};
}

FixedProb flip_schedule(std::uint64_t step, const CosineSchedule& sched) {
    if (sched.period == 0) throw ValueError("cosine schedule: zero period");
    return cosine_flip_prob(step % sched.period, sched.period, sched.p_min, sched.p_max);
}

} // namespace bnn
