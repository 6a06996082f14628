//! Shared acceptance-test fixtures.
//!
//! The expected Shapiro-Wilk and Welch values below were computed with an
//! independent reference statistical implementation (scipy 1.15.3) and
//! frozen before the statistics engine was written. Sample values are
//! decimal literals, so the reference and this crate parse bit-identical
//! f64 inputs.

#![allow(dead_code, clippy::excessive_precision, clippy::type_complexity)]

/// (sample, expected W, expected p) for n = 10..50.
pub const SHAPIRO_FIXTURES: &[(&[f64], f64, f64)] = &[
    // n=10 normal
    (
        &[
            98.413397, 102.243008, 104.533036, 93.289779, 99.848095, 94.771161, 93.984797,
            99.688316, 98.484402, 105.705853,
        ],
        0.9436400963,
        0.5941810726,
    ),
    // n=12 uniform
    (
        &[
            137.350743, 116.931180, 64.149656, 83.047175, 65.613471, 148.513861, 61.287796,
            77.519171, 79.021113, 56.586186, 57.651828, 127.396012,
        ],
        0.8478067350,
        0.0344970857,
    ),
    // n=14 lognorm
    (
        &[
            23.047802, 30.367217, 21.988364, 20.312966, 56.781247, 14.242618, 6.515555, 17.875091,
            23.456824, 15.792868, 23.785979, 6.559825, 13.059887, 13.464363,
        ],
        0.8114283930,
        0.0069347273,
    ),
    // n=15 bimodal
    (
        &[
            11.312842, 10.564623, 8.485198, 10.433631, 10.032093, 9.428285, 9.824083, 19.301711,
            19.584009, 19.296979, 20.939022, 19.406349, 20.014597, 19.204083, 19.698896,
        ],
        0.7645238170,
        0.0013349313,
    ),
    // n=18 normal
    (
        &[
            89.495272, 102.656007, 102.468405, 97.689449, 97.038385, 93.264535, 98.509281,
            91.981462, 97.504943, 98.403990, 98.521023, 92.995201, 97.175927, 102.788571,
            100.721044, 101.487902, 100.785362, 104.609219,
        ],
        0.9485529246,
        0.4027703008,
    ),
    // n=20 uniform
    (
        &[
            62.928765, 84.571131, 127.507848, 100.722850, 144.224602, 84.018024, 117.341740,
            69.144628, 60.910574, 71.778201, 103.060216, 123.898514, 122.999499, 87.258726,
            84.786579, 60.843526, 109.686782, 59.288614, 66.947926, 120.717516,
        ],
        0.9225708145,
        0.1110514444,
    ),
    // n=22 lognorm
    (
        &[
            18.017193, 22.194739, 18.282356, 38.195539, 43.079044, 33.613941, 14.306356, 32.394557,
            24.274150, 19.359419, 10.008757, 52.486387, 10.209837, 17.042004, 18.784033, 44.897922,
            18.685112, 32.069642, 28.501300, 20.984454, 27.130270, 11.181772,
        ],
        0.9322783798,
        0.1368646631,
    ),
    // n=25 bimodal
    (
        &[
            10.142258, 10.800920, 10.498404, 9.493789, 10.740489, 10.332412, 9.664616, 9.522620,
            9.808985, 10.140416, 9.822424, 10.788817, 19.576219, 20.377616, 19.654164, 19.299318,
            20.348952, 20.300911, 20.247035, 20.134758, 20.239036, 20.896405, 19.106677, 20.754020,
            19.777086,
        ],
        0.7232559820,
        0.0000152266,
    ),
    // n=28 normal
    (
        &[
            102.007330, 101.971853, 98.628003, 98.950760, 99.869669, 100.681529, 96.213237,
            100.762437, 90.891210, 99.089989, 98.573738, 102.944850, 93.676873, 100.588796,
            100.073648, 101.672502, 92.250592, 96.206426, 97.059523, 100.817537, 105.246547,
            96.193949, 97.896997, 94.581881, 99.662645, 97.791709, 102.707483, 105.655119,
        ],
        0.9784521166,
        0.8118422068,
    ),
    // n=30 uniform
    (
        &[
            52.860559, 86.663612, 78.140694, 117.665938, 62.506075, 76.483615, 127.575628,
            62.714063, 67.665565, 88.591865, 131.644879, 54.092056, 132.681262, 95.596951,
            116.851302, 60.329872, 146.013144, 70.092163, 110.534390, 72.784785, 75.014021,
            81.404450, 92.753634, 67.947196, 134.267257, 110.958400, 132.814281, 102.859821,
            70.167463, 138.295419,
        ],
        0.9222247013,
        0.0306445868,
    ),
    // n=32 lognorm
    (
        &[
            9.951074, 12.500916, 54.273162, 11.607578, 24.051102, 22.163702, 36.895922, 41.710417,
            20.704006, 14.796661, 10.354246, 7.580966, 16.809089, 29.120328, 36.563916, 29.513467,
            11.468319, 18.886198, 19.226406, 19.968700, 37.485642, 28.742160, 33.316749, 33.383135,
            10.932886, 27.694257, 13.186105, 16.296143, 29.174878, 7.834771, 13.416802, 17.120976,
        ],
        0.9297841546,
        0.0386242005,
    ),
    // n=35 bimodal
    (
        &[
            9.649283, 8.744258, 10.787329, 10.016601, 10.292601, 9.949049, 9.854370, 9.961927,
            10.620178, 10.099097, 9.502378, 10.342305, 10.174541, 10.993811, 9.616819, 9.952804,
            10.563260, 20.513996, 19.327382, 20.364520, 19.689915, 19.321542, 21.056797, 19.616489,
            20.356285, 20.576022, 19.923722, 19.818691, 20.442703, 19.519137, 19.766282, 20.553291,
            19.735709, 21.030174, 20.889214,
        ],
        0.7313899584,
        0.0000011877,
    ),
    // n=38 normal
    (
        &[
            103.964691, 98.741814, 89.745444, 90.512218, 96.023303, 102.019250, 98.825374,
            102.290391, 99.714793, 94.004623, 101.212722, 102.771200, 100.457195, 95.732617,
            87.877957, 97.165685, 93.390422, 102.048133, 95.380915, 95.738543, 94.296780,
            99.182115, 94.435450, 101.423536, 100.855222, 108.894928, 100.553431, 103.548801,
            98.388291, 104.898910, 108.251336, 89.997016, 108.793778, 110.676856, 98.270184,
            98.294005, 98.415121, 105.632610,
        ],
        0.9841098275,
        0.8550309111,
    ),
    // n=40 uniform
    (
        &[
            108.891598, 142.738967, 113.659565, 109.138870, 91.117534, 117.943568, 95.820381,
            108.200186, 149.045993, 120.933548, 68.654209, 127.213667, 57.445161, 106.723749,
            123.870466, 59.424920, 103.028104, 105.291080, 85.341592, 75.779068, 148.510355,
            80.138712, 62.330799, 127.082126, 102.604516, 62.283101, 132.781360, 64.821123,
            112.584424, 99.271994, 85.731189, 52.316362, 52.064375, 88.337932, 83.714149,
            77.397379, 107.965260, 82.973014, 110.117764, 129.910129,
        ],
        0.9707427750,
        0.3798287767,
    ),
    // n=42 lognorm
    (
        &[
            38.417285, 28.770548, 12.154451, 28.358364, 18.062042, 50.258296, 21.640133, 33.067987,
            21.178605, 7.204780, 12.841868, 18.693062, 12.125372, 10.796120, 15.354276, 18.024715,
            21.819178, 29.981552, 22.766051, 34.829249, 7.022292, 13.296726, 22.882514, 12.575671,
            7.898690, 10.224359, 14.609420, 16.912967, 14.698327, 11.441033, 40.876328, 23.844185,
            14.298162, 30.875833, 27.269656, 25.265369, 68.891892, 29.400310, 15.254852, 28.584853,
            20.140976, 38.573271,
        ],
        0.8853243595,
        0.0005389137,
    ),
    // n=45 bimodal
    (
        &[
            9.509188, 9.780308, 10.610599, 10.342304, 9.860635, 10.071113, 9.276658, 10.574227,
            10.429622, 9.504450, 9.962516, 9.359622, 10.434447, 10.175615, 9.420189, 9.879176,
            10.022419, 10.824394, 9.351910, 9.958271, 9.297914, 10.217223, 18.513948, 19.727802,
            20.024397, 20.247974, 20.321061, 19.980779, 20.007925, 19.740231, 19.961130, 19.963170,
            20.089604, 20.080494, 19.704499, 19.791765, 20.501777, 20.751553, 20.032507, 19.712503,
            20.093522, 19.334947, 20.378344, 19.857165, 20.340413,
        ],
        0.7090763691,
        0.0000000395,
    ),
    // n=47 normal
    (
        &[
            99.234278, 103.870362, 99.240835, 101.346366, 105.209679, 101.059216, 97.806473,
            94.015142, 109.193731, 101.243377, 105.688557, 103.078082, 91.744728, 103.573073,
            95.885622, 102.226936, 100.228823, 101.280091, 100.365989, 100.319007, 103.490112,
            92.438421, 104.377944, 103.941310, 106.841158, 104.682167, 107.545231, 95.748165,
            105.732641, 95.390655, 107.523620, 92.338842, 97.485852, 96.924617, 100.742910,
            103.400443, 99.690815, 100.389122, 92.702056, 100.668612, 101.038820, 90.932389,
            104.917198, 96.608654, 102.052962, 105.370958, 109.749787,
        ],
        0.9710991796,
        0.2915470678,
    ),
    // n=48 uniform
    (
        &[
            105.693508, 98.134315, 109.422579, 106.577306, 136.638572, 117.581738, 53.513891,
            73.526154, 64.242158, 115.117528, 105.029956, 101.368753, 70.513213, 143.320368,
            86.100532, 95.011307, 61.884400, 142.606467, 75.167837, 51.194087, 112.698449,
            93.304586, 119.704331, 139.979394, 121.180016, 86.522284, 55.706013, 68.238450,
            130.838538, 63.514353, 88.764406, 133.694542, 66.485759, 67.497754, 50.126881,
            141.491399, 64.674071, 89.254603, 88.123988, 97.785442, 87.788746, 85.813280,
            80.913546, 111.130333, 103.384608, 97.086925, 102.018875, 52.003300,
        ],
        0.9618333083,
        0.1197393960,
    ),
    // n=49 lognorm
    (
        &[
            12.953572, 24.988016, 42.566124, 22.172789, 26.778341, 20.334260, 8.215526, 58.636854,
            32.687769, 15.457888, 23.589622, 36.043366, 14.556417, 25.883348, 33.661566, 17.072156,
            18.597347, 24.877290, 58.724003, 16.299722, 20.157246, 18.718107, 27.289175, 20.457663,
            30.543921, 7.823343, 29.887526, 61.199656, 4.588843, 27.760202, 15.167485, 24.955003,
            19.238789, 24.297858, 13.727189, 15.317939, 18.131512, 36.754510, 22.000570, 28.755515,
            20.524790, 29.895072, 26.936658, 19.015471, 7.857340, 11.649654, 24.239305, 18.215112,
            16.836728,
        ],
        0.8770751915,
        0.0001062886,
    ),
    // n=50 bimodal
    (
        &[
            10.427826, 10.392065, 9.816707, 9.988445, 9.494028, 8.920009, 11.239077, 9.978844,
            10.330503, 9.048144, 10.603829, 10.435017, 10.159067, 10.260504, 10.235815, 8.963603,
            10.335381, 10.253339, 9.684377, 9.854575, 9.234184, 10.580762, 9.849368, 10.129101,
            9.610983, 20.410185, 20.867145, 19.899582, 20.910989, 20.256684, 19.576208, 20.417647,
            20.421699, 19.518016, 20.073382, 20.464765, 19.848663, 20.290407, 19.370589, 19.953128,
            19.364038, 20.167711, 19.967472, 20.376861, 19.491343, 20.762324, 20.120970, 20.486709,
            19.500397, 19.780498,
        ],
        0.7238639173,
        0.0000000228,
    ),
];

/// (a, b, expected t, expected Welch df, expected two-sided p).
pub const WELCH_FIXTURES: &[(&[f64], &[f64], f64, f64, f64)] = &[
    (
        &[
            54.201205, 65.635418, 65.305478, 60.608524, 66.135624, 60.124580, 63.946424, 54.809066,
            69.213262, 62.628012, 73.413358, 56.662160, 65.667101, 61.567034, 66.386120, 65.789022,
            66.022917, 57.061726, 75.810351, 65.212292, 57.112972, 65.363264, 56.909458, 70.950687,
            63.164166,
        ],
        &[
            59.080253, 61.105655, 60.729234, 64.076958, 62.519366, 54.988500,
        ],
        1.864730140182,
        13.681778218489,
        8.381200859540e-02,
    ),
    (
        &[
            72.399577, 72.737875, 73.157133, 72.806782, 73.459382, 75.356121, 72.738232, 72.808043,
            75.540506, 74.028200, 73.119252, 75.299396, 73.739735, 74.392333, 73.249961, 71.745759,
            74.707781, 74.804588, 74.790749, 74.069375, 74.347020, 73.730259, 73.265122, 72.323755,
            73.400395, 75.158360, 74.753461, 73.515716,
        ],
        &[
            83.455291, 79.563994, 80.450939, 81.959242, 80.269744, 79.739649, 82.507941, 78.148939,
            84.534817, 78.460085, 82.275624, 82.292634, 84.171694, 82.652573, 79.470808, 79.557774,
            84.576542, 81.938703, 79.172210, 81.014196, 83.233234, 79.991456, 83.299180, 82.879525,
            84.573229, 82.568253, 80.080669, 83.191008, 79.513781,
        ],
        -18.979589557447,
        42.683916464791,
        1.996439033840e-22,
    ),
    (
        &[
            91.475432, 91.195893, 90.905695, 91.025735, 91.037742, 92.301578, 90.999638, 91.382606,
            92.421498, 92.573874, 91.435964, 90.770681, 90.262448, 92.815465, 91.907029, 91.325191,
            92.685440, 90.958933, 91.755347, 91.325922, 90.430785, 91.111555, 91.961030, 90.704966,
            90.438134, 91.050283, 89.692207,
        ],
        &[
            96.574947, 87.463311, 108.250570, 107.227217, 88.371786, 97.762491, 99.061220,
            104.939132, 97.710912, 105.214776, 93.482068, 93.685423, 100.058834, 86.855433,
            81.478360, 85.439151, 87.462787, 104.063062, 101.892039, 96.408786, 92.284181,
            98.399423, 100.818825,
        ],
        -3.165510523328,
        22.399484752263,
        4.414796312304e-03,
    ),
    (
        &[
            70.620740, 68.900304, 69.697011, 68.914627, 71.144336, 72.290081, 70.099733, 71.527220,
            68.302079, 72.748521, 69.857507, 69.766512, 70.688842,
        ],
        &[
            82.913746, 84.391510, 76.251108, 82.652750, 74.320972, 71.092812, 94.313124, 71.873993,
            78.903385, 81.680404, 65.611230, 91.558234, 60.032465, 79.982885, 88.224308, 60.899093,
            79.650126, 78.537376,
        ],
        -3.345110130869,
        17.914000340288,
        3.622459072595e-03,
    ),
    (
        &[
            114.921974, 131.357096, 87.229081, 98.590661, 109.715738, 132.458034, 128.938193,
            128.111054, 102.479541, 104.773771, 112.990246, 117.274125, 111.024867, 109.464640,
            118.609746, 112.977778, 114.410855, 114.807305, 104.696765, 122.827365, 121.328276,
            110.406120, 133.144983, 121.233875,
        ],
        &[
            109.521092, 115.681236, 114.730839, 120.606313, 127.372896, 122.313561, 107.059389,
            113.442632, 119.841784, 126.547491, 130.287172, 122.514121, 113.131352, 117.688613,
        ],
        -1.178051292901,
        35.906746781731,
        2.465250125969e-01,
    ),
    (
        &[
            71.584149, 64.231045, 72.010050, 76.525411, 84.694993, 78.628009, 77.005723, 64.826245,
            81.307301, 67.047844, 84.643267, 80.704973, 74.365197, 80.041084, 73.855709, 82.669914,
            84.377984, 82.347594, 65.620133, 67.223058, 83.801758,
        ],
        &[
            78.449512, 74.341544, 85.014708, 79.817805, 73.886960, 71.653424, 73.741216, 86.837178,
            74.112961, 77.394391, 80.043096, 79.131483, 78.096330, 79.139718, 72.985891, 76.283283,
            75.220183, 81.874605, 84.276814, 80.110919, 78.067635, 80.631457, 78.497624, 83.071608,
            78.628511, 81.779744, 82.638989, 78.804733,
        ],
        -1.555688857552,
        28.537759824221,
        1.308037094090e-01,
    ),
    (
        &[
            143.151026, 141.646071, 148.116604, 115.387115, 145.425787, 118.723451, 152.158973,
            146.404303, 137.356190, 138.748299, 137.872743, 154.851114, 156.504800, 132.620383,
            140.202654, 147.114216, 133.400152, 123.950447, 144.812215,
        ],
        &[
            134.369799, 142.707629, 142.988391, 124.492891, 140.692379, 123.031100, 151.041717,
            140.137590, 144.625211, 159.336108, 146.536096, 149.822401, 126.539860, 138.244907,
            122.766207, 136.787855, 135.398444, 129.676558, 130.943229, 133.810391,
        ],
        0.651750774798,
        35.828550342918,
        5.187212274925e-01,
    ),
    (
        &[79.121803, 72.587433, 74.497892, 57.404668, 66.222823],
        &[
            71.533005, 69.372707, 66.967345, 62.547693, 66.302033, 66.262826, 68.185129, 67.682803,
            62.365320, 69.943382, 63.888096, 63.051012, 69.410596, 67.802149, 63.647689, 74.867536,
            71.276447, 66.722407, 65.379862, 61.502200,
        ],
        0.788767051349,
        4.355553567797,
        4.709738296506e-01,
    ),
    (
        &[
            100.534537, 101.166411, 99.156458, 99.574536, 99.760553, 99.944971, 100.337124,
            99.009982, 97.458352, 100.699127, 99.628367, 100.814751, 98.680876, 101.293853,
            99.229412, 99.194526, 99.299423, 99.213401, 99.931906, 97.978992, 99.448465, 99.257226,
            100.955792,
        ],
        &[
            97.467060, 112.090015, 108.774133, 113.238441, 108.650262, 107.794574, 111.173490,
            106.507966, 106.220492, 108.406483, 108.209155, 105.821013, 109.949082,
        ],
        -7.628066402489,
        12.853970688896,
        4.019677081911e-06,
    ),
    (
        &[
            148.512992, 143.536387, 149.247027, 144.650969, 151.838138, 149.171631, 149.331027,
            152.102856, 141.647906, 145.323294, 152.812772, 151.788577, 146.279373,
        ],
        &[
            145.554059, 141.398379, 153.829684, 159.018520, 149.478780, 151.492792, 145.769701,
            153.895123, 150.316925, 162.087110, 143.911369, 148.014114, 147.453476, 149.520011,
            157.934294, 140.456269, 135.319375, 156.817009, 143.737663, 135.689227, 161.298160,
            158.346130, 152.914543, 146.073955, 155.983767, 146.667336,
        ],
        -0.889515654370,
        36.999976101149,
        3.794731607427e-01,
    ),
    (
        &[
            91.254060, 93.739151, 94.709667, 85.901486, 89.739546, 99.208974, 79.723535, 87.525207,
            84.987625, 88.342097, 100.375008, 87.548893, 89.643730, 89.621401, 89.339996,
            101.549617, 92.306046,
        ],
        &[
            84.559168, 85.160726, 84.150347, 83.482175, 83.100576, 87.000106, 83.118322, 88.090093,
            97.431445, 85.975255, 87.277462, 93.948560, 82.804405, 89.501801,
        ],
        2.269259878681,
        28.847821100127,
        3.091039295792e-02,
    ),
    (
        &[
            109.692454, 106.211795, 108.998968, 104.794635, 106.544592, 104.543169, 103.691286,
            106.619055, 104.979695, 108.557405, 103.875430, 104.805855, 105.815885, 108.221001,
            111.992620, 108.003871, 107.456927, 109.439485, 110.495376, 106.568709, 104.700219,
            106.933679, 106.135992,
        ],
        &[
            105.577988, 99.860451, 100.444771, 102.814625, 102.518493, 104.264885, 100.609740,
            101.605456, 104.872717, 102.122240, 100.323596, 98.937961, 104.915536, 103.250989,
            102.629253, 99.774736, 101.747531, 101.284525, 102.113789,
        ],
        7.614145628187,
        39.952239659824,
        2.675711620538e-09,
    ),
    (
        &[
            87.199366, 86.679487, 88.154352, 88.265308, 88.560199, 88.829728, 88.763282, 88.071153,
            86.749636, 86.229743, 87.799069, 88.189924, 89.353787, 86.217912, 86.746941,
        ],
        &[
            91.973084, 85.297079, 64.180369, 67.730296, 64.427732, 72.876910, 85.312454, 73.391930,
            94.524983, 64.324487, 87.460498, 83.721053, 88.091504, 65.951513, 90.317442, 81.290834,
            111.380467, 95.402086, 73.838923, 88.189514, 96.124502, 89.724924, 101.648558,
            106.779234, 84.417886, 101.212196, 96.490412, 79.577009, 63.143265,
        ],
        1.294513458690,
        28.595205323010,
        2.058445992755e-01,
    ),
    (
        &[
            91.928705, 91.454301, 89.112749, 91.460228, 87.730762, 92.379981, 93.578573, 87.029373,
            92.831796, 94.753598, 96.903280, 94.474079, 91.651332, 88.267038, 85.909486, 91.407167,
            90.291548, 88.699424, 95.080533, 92.983476, 91.005031, 89.230953, 84.548379, 89.051740,
            96.640205,
        ],
        &[
            98.112947, 95.330747, 98.904931, 86.348066, 96.231999, 96.386281, 102.403838,
            87.653423, 85.507193,
        ],
        -1.395546684834,
        9.638871682809,
        1.941650978951e-01,
    ),
    (
        &[
            69.450969, 78.071241, 64.614394, 71.968530, 79.200005, 59.591692, 70.376108, 47.541114,
            61.867053, 58.700463, 62.290691, 54.732897, 79.367965, 69.599749, 60.201535, 85.096539,
            85.836244, 60.866387, 89.459425, 82.142035, 68.949534, 43.382443, 47.679534, 71.963921,
            66.927776, 71.038169, 55.476726, 70.019272,
        ],
        &[
            63.135916, 60.427546, 62.988068, 61.509197, 65.670451, 57.230711, 56.860199, 61.637970,
            53.356198, 57.259271, 58.688736, 57.439155, 61.084497, 57.395956, 57.977537, 65.642911,
            56.011758, 62.068655, 56.356275, 55.804987, 57.515932, 60.041067, 57.194832, 56.869288,
            56.515878, 64.714673,
        ],
        3.467701088746,
        31.476182026387,
        1.541630114186e-03,
    ),
    (
        &[
            107.732799, 109.980214, 109.806650, 97.155590, 102.794342, 102.972335, 98.614992,
            112.708990, 106.449111, 94.486288, 92.188218, 109.795026, 97.165255, 109.804846,
            96.959486, 97.482987, 102.372990, 109.367235, 109.583234, 104.786886, 118.231334,
            102.803054, 117.770515, 112.437547, 91.033032, 103.892547, 98.817681, 119.056024,
        ],
        &[
            91.872822, 99.378711, 105.991810, 95.515753, 85.357919, 83.891863, 107.338775,
            111.873568, 83.425856, 90.366255, 90.827733, 89.323362, 107.245444, 83.438482,
        ],
        3.346889806061,
        21.056730554806,
        3.047537707486e-03,
    ),
    (
        &[
            124.741985, 138.989531, 123.581825, 129.186290, 113.885212, 118.411533, 130.415729,
            124.246242, 128.241485, 134.044820, 118.514303, 135.197885, 132.833870, 123.145069,
            121.369041, 119.672557, 128.651949, 110.289697, 107.712119, 127.567348, 124.420152,
        ],
        &[
            124.943465, 119.957425, 122.986918, 125.511365, 121.920474, 126.545855, 122.650096,
            119.665686, 113.430015, 111.781275, 120.258158, 125.323914, 124.754992, 129.970993,
            115.979922, 117.064713, 120.439429, 127.517703, 108.150309, 135.597075, 126.453380,
            115.829408, 118.950263, 125.334207, 116.924048, 115.909895, 120.369110,
        ],
        1.560453243211,
        35.664877579023,
        1.274835671234e-01,
    ),
    (
        &[
            145.189995, 152.439005, 140.894285, 142.484079, 140.770227, 138.858347, 151.123802,
            149.997910, 144.195010, 146.132617, 145.586425,
        ],
        &[
            144.286630, 147.091393, 145.839212, 147.386787, 146.330801, 146.316021, 146.165210,
            148.570579, 149.313638, 148.719897, 149.421726, 145.924352, 147.318725, 149.519742,
            145.387788, 148.346571, 148.768351,
        ],
        -1.498378013941,
        11.664482424741,
        1.606013775118e-01,
    ),
    (
        &[
            148.239465, 143.245407, 149.786227, 146.523647, 150.293289, 148.017208, 155.617257,
            144.876049, 147.149746, 146.279690, 147.223973, 148.517988, 148.379070, 146.415154,
        ],
        &[
            154.444756, 147.661082, 152.828411, 149.857785, 148.756994, 150.778500, 147.432173,
            146.374355, 153.453918, 146.618211, 152.426580, 153.039661, 152.452032, 149.032507,
        ],
        -2.317938052578,
        25.945754917898,
        2.860237270865e-02,
    ),
    (
        &[
            77.774962, 57.268290, 70.362231, 67.013760, 55.774573, 70.852724, 58.352194, 59.759749,
            71.550715, 70.109143, 79.376850, 63.168591,
        ],
        &[
            63.799198, 64.250854, 64.892001, 70.803920, 64.262649, 75.757518, 70.142753, 66.642306,
            68.590804, 73.021886, 61.251863, 66.620722, 75.433107, 67.354026, 72.095795, 66.980628,
            70.073261, 73.669930, 71.472011, 71.251700, 70.589449, 74.198468,
        ],
        -1.005036064804,
        14.244370984532,
        3.316479698718e-01,
    ),
];
