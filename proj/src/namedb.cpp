// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#include "matchrisk/text.hpp"

namespace matchrisk {
namespace {

struct NameRow {
    const char* name;
    uint64_t male;
    uint64_t female;
};

// 200 common US given names with approximate lifetime occurrence counts,
// same shape as the social security table. Counts are rounded; a handful of
// genuinely ambiguous names (jordan, taylor, casey, ...) are kept so that
// probabilistic gender inference has real work to do.
constexpr NameRow kBuiltinNames[] = {
    {"james", 5202714, 22056},      {"john", 5150510, 19563},
    {"robert", 4834094, 18052},     {"michael", 4392696, 20833},
    {"william", 4156142, 12374},    {"david", 3649334, 12657},
    {"joseph", 2640240, 10962},     {"richard", 2576934, 7684},
    {"charles", 2466882, 10087},    {"thomas", 2384792, 7622},
    {"christopher", 2112614, 8385}, {"daniel", 1925476, 7711},
    {"matthew", 1604700, 5905},     {"george", 1470315, 7154},
    {"donald", 1466152, 4739},      {"anthony", 1432828, 6635},
    {"paul", 1399896, 6162},        {"mark", 1365742, 4772},
    {"edward", 1293428, 4708},      {"steven", 1281302, 4486},
    {"kenneth", 1261531, 4844},     {"andrew", 1253050, 4095},
    {"brian", 1159514, 4804},       {"joshua", 1151291, 3746},
    {"kevin", 1135136, 3922},       {"ronald", 1073062, 3907},
    {"timothy", 1069165, 3232},     {"jason", 1035085, 4291},
    {"jeffrey", 975104, 3196},      {"frank", 959460, 4852},
    {"gary", 904176, 3471},         {"ryan", 892434, 4292},
    {"nicholas", 872409, 2924},     {"eric", 866482, 3235},
    {"stephen", 858705, 2780},      {"jacob", 851164, 2734},
    {"larry", 801331, 3026},        {"jonathan", 786318, 2683},
    {"scott", 761091, 2715},        {"raymond", 751614, 3184},
    {"justin", 742538, 2791},       {"brandon", 731934, 2652},
    {"gregory", 706446, 2290},      {"samuel", 693996, 2486},
    {"benjamin", 692921, 2191},     {"patrick", 668640, 2858},
    {"jack", 637308, 2388},         {"henry", 633087, 2470},
    {"walter", 619650, 2632},       {"dennis", 611815, 2428},
    {"jerry", 604294, 4368},        {"alexander", 589793, 1747},
    {"peter", 584097, 1972},        {"tyler", 573221, 2375},
    {"douglas", 567591, 1774},      {"harold", 555556, 2380},
    {"aaron", 539599, 1806},        {"jose", 537142, 2395},
    {"adam", 530897, 1680},         {"arthur", 507109, 2131},
    {"zachary", 502097, 1537},      {"carl", 496311, 1809},
    {"nathan", 481052, 1507},       {"albert", 468419, 2075},
    {"kyle", 465351, 2415},         {"lawrence", 464794, 1537},
    {"joe", 462088, 2953},          {"willie", 447922, 23916},
    {"gerald", 437609, 1457},       {"roger", 437567, 1566},
    {"keith", 431781, 1614},        {"jeremy", 426641, 1564},
    {"terry", 422302, 35093},       {"harry", 412179, 1725},
    {"ralph", 405960, 1587},        {"sean", 404826, 2011},
    {"jesse", 388042, 7146},        {"roy", 387294, 1698},
    {"louis", 383447, 1799},        {"billy", 370429, 4446},
    {"austin", 358203, 1559},       {"bruce", 356636, 1223},
    {"eugene", 355214, 1435},       {"christian", 351470, 9232},
    {"bryan", 346489, 1292},        {"wayne", 339210, 1384},
    {"russell", 338031, 1145},      {"howard", 334512, 1198},
    {"fred", 327596, 1329},         {"ethan", 325968, 954},
    {"jordan", 324166, 129956},     {"philip", 316880, 1020},
    {"alan", 316238, 1147},         {"juan", 313243, 1271},
    {"randy", 312735, 2756},        {"vincent", 309789, 1417},
    {"bobby", 304516, 4842},        {"dylan", 297928, 6458},
    {"johnny", 297158, 2829},       {"phillip", 294704, 1029},
    {"victor", 288728, 1378},       {"clarence", 287612, 1272},
    {"ernest", 286426, 1134},       {"martin", 284945, 1152},
    {"craig", 283814, 909},         {"stanley", 281899, 1210},
    {"shawn", 280640, 7215},        {"travis", 279610, 1105},
    {"bradley", 277542, 888},       {"leonard", 272076, 967},
    {"earl", 271759, 1187},         {"gabriel", 263283, 1660},
    {"jimmy", 262953, 2387},        {"francis", 254117, 56825},
    {"mary", 13566, 4142730},       {"patricia", 4459, 1577565},
    {"jennifer", 3994, 1475154},    {"linda", 3190, 1456006},
    {"elizabeth", 8657, 1651718},   {"barbara", 3729, 1438396},
    {"susan", 2882, 1123304},       {"jessica", 3730, 1054034},
    {"sarah", 3738, 1089560},       {"karen", 2717, 989049},
    {"lisa", 2948, 966488},         {"nancy", 2958, 992453},
    {"betty", 2625, 938638},        {"margaret", 4022, 945563},
    {"sandra", 2300, 880273},       {"ashley", 9403, 849509},
    {"kimberly", 4709, 775733},     {"emily", 2872, 841501},
    {"donna", 2398, 833736},        {"michelle", 3645, 717091},
    {"carol", 3974, 747560},        {"amanda", 2528, 702703},
    {"dorothy", 3074, 724664},      {"melissa", 2360, 737955},
    {"deborah", 2430, 739966},      {"stephanie", 2776, 747936},
    {"rebecca", 2736, 728245},      {"sharon", 2594, 719092},
    {"laura", 2282, 721299},        {"cynthia", 2340, 688771},
    {"kathleen", 2186, 688072},     {"amy", 2614, 680636},
    {"angela", 2435, 655593},       {"shirley", 4667, 672092},
    {"anna", 3958, 629500},         {"brenda", 2270, 605285},
    {"pamela", 2059, 592204},       {"emma", 2895, 579063},
    {"nicole", 2730, 608055},       {"helen", 3008, 576429},
    {"samantha", 2424, 586857},     {"katherine", 2400, 519913},
    {"christine", 2386, 563621},    {"debra", 1747, 571013},
    {"rachel", 2166, 573170},       {"catherine", 2512, 506529},
    {"carolyn", 1819, 546904},      {"janet", 2003, 541420},
    {"ruth", 2577, 554061},         {"maria", 4929, 582242},
    {"heather", 1884, 489846},      {"diane", 1728, 498471},
    {"virginia", 2306, 513173},     {"julie", 1831, 524386},
    {"joyce", 2571, 507578},        {"victoria", 2256, 471040},
    {"olivia", 1584, 468656},       {"kelly", 61364, 471396},
    {"christina", 2014, 471733},    {"lauren", 1809, 440823},
    {"joan", 2914, 501911},         {"evelyn", 2541, 468451},
    {"judith", 1663, 464517},       {"megan", 1742, 429985},
    {"andrea", 2566, 421217},       {"cheryl", 1847, 449806},
    {"hannah", 1513, 444676},       {"jacqueline", 1787, 405041},
    {"martha", 2351, 457423},       {"gloria", 1744, 431111},
    {"teresa", 1683, 435619},       {"ann", 2503, 457675},
    {"sara", 1541, 409924},         {"madison", 15576, 384405},
    {"frances", 4111, 440095},      {"kathryn", 1629, 385464},
    {"janice", 1475, 414704},       {"jean", 5532, 440835},
    {"abigail", 1399, 374905},      {"alice", 2426, 414971},
    {"julia", 1966, 398378},        {"judy", 1514, 396509},
    {"sophia", 1226, 354135},       {"grace", 2030, 372559},
    {"denise", 1453, 382293},       {"amber", 1449, 362687},
    {"doris", 1717, 370519},        {"marilyn", 1576, 368199},
    {"danielle", 1450, 355983},     {"beverly", 2214, 365247},
    {"isabella", 1129, 331141},     {"theresa", 1390, 348500},
    {"diana", 1634, 348070},        {"natalie", 1367, 328007},
    {"brittany", 1268, 357599},     {"charlotte", 1448, 335796},
    {"taylor", 112303, 321954},     {"casey", 176544, 126247},
    {"riley", 96315, 131500},       {"jamie", 85584, 267553},
    {"morgan", 73902, 217426},      {"avery", 60979, 97727},
    {"peyton", 42743, 76358},       {"quinn", 48578, 52104},
    {"rowan", 35962, 17616},        {"skyler", 44401, 23156},
};

}  // namespace

const NameGenderTable& NameGenderTable::builtin() {
    static const NameGenderTable table = [] {
        NameGenderTable t;
        for (const auto& row : kBuiltinNames) t.insert(row.name, row.male, row.female);
        return t;
    }();
    return table;
}

}  // namespace matchrisk
