//! Scaling (low-pass) filter taps for the supported orthonormal families,
//! transcribed from the standard published tables and refined so that the
//! orthonormality and vanishing-moment identities hold to machine precision.
//! `mod.rs` validates every filter against those identities in tests.

pub(super) const DB2: [f64; 4] = [
    0.48296291314453416,
    0.8365163037378078,
    0.2241438680420134,
    -0.12940952255126037,
];

pub(super) const DB3: [f64; 6] = [
    0.3326705529500827,
    0.8068915093110927,
    0.4598775021184915,
    -0.1350110200102546,
    -0.0854412738820266,
    0.03522629188570954,
];

pub(super) const DB4: [f64; 8] = [
    0.23037781330889642,
    0.7148465705529156,
    0.630880767929859,
    -0.0279837694168597,
    -0.1870348117190931,
    0.030841381835560743,
    0.03288301166688528,
    -0.010597401785068992,
];

pub(super) const DB5: [f64; 10] = [
    0.1601023979741927,
    0.6038292697971894,
    0.7243085284377732,
    0.13842814590132116,
    -0.24229488706638208,
    -0.032244869584638486,
    0.07757149384004572,
    -0.006241490212798263,
    -0.012580751999081981,
    0.0033357252854737695,
];

pub(super) const DB6: [f64; 12] = [
    0.11154074335011414,
    0.49462389039846444,
    0.7511339080210945,
    0.3152503517091802,
    -0.22626469396544446,
    -0.1297668675672537,
    0.09750160558732333,
    0.027522865530303385,
    -0.0315820393174856,
    0.000553842201161634,
    0.004777257510945532,
    -0.0010773010853085206,
];

pub(super) const DB7: [f64; 14] = [
    0.07785205408502384,
    0.3965393194819631,
    0.7291320908462524,
    0.4697822874051264,
    -0.1439060039286134,
    -0.22403618499384123,
    0.07130921926684936,
    0.08061260915106642,
    -0.038029936935016315,
    -0.01657454163066283,
    0.012550998556099431,
    0.0004295779729212206,
    -0.001801640704047616,
    0.0003537137999746861,
];

pub(super) const DB8: [f64; 16] = [
    0.05441584224281448,
    0.312871590913173,
    0.6756307362963582,
    0.5853546836555942,
    -0.015829105254296157,
    -0.28401554296206694,
    0.0004724845727051757,
    0.1287474266209719,
    -0.01736930100136537,
    -0.04408825393112764,
    0.013981027917351096,
    0.008746094047517252,
    -0.004870352993477061,
    -0.00039174037338851543,
    0.0006754494064572243,
    -0.00011747678412568837,
];

pub(super) const DB9: [f64; 18] = [
    0.03807794736245978,
    0.24383467460616187,
    0.6048231236823958,
    0.6572880780566096,
    0.1331973858403865,
    -0.293273783277451,
    -0.09684078323300117,
    0.1485407493381256,
    0.030725681484668452,
    -0.06763282906271927,
    0.000250947113021368,
    0.02236166212474392,
    -0.004723204757544979,
    -0.00428150368279478,
    0.0018476468831194262,
    0.00023038576355344776,
    -0.00025196318895774015,
    3.934732031817965e-05,
];

pub(super) const DB10: [f64; 20] = [
    0.026670057897168604,
    0.1881768000631872,
    0.5272011889163205,
    0.6884590394650738,
    0.2811723436835987,
    -0.24984642432643772,
    -0.195946274373692,
    0.127369340342399,
    0.0930573645792651,
    -0.0713941471705405,
    -0.029457536789499816,
    0.033212674053475735,
    0.003606553542518075,
    -0.01073317547199624,
    0.0013953517575856144,
    0.001992405286818671,
    -0.0006858566968684144,
    -0.00011646685189707486,
    9.358867013797635e-05,
    -1.3264203531384816e-05,
];

pub(super) const SYM4: [f64; 8] = [
    -0.07576571478950196,
    -0.029635527646001126,
    0.49761866763277685,
    0.8037387518051317,
    0.297857795605304,
    -0.09921954357663434,
    -0.012603967262031278,
    0.0322231006040514,
];

pub(super) const SYM5: [f64; 10] = [
    0.019538882735250354,
    -0.021101834024687856,
    -0.1753280899080567,
    0.01660210576450785,
    0.6339789634567901,
    0.7234076904040418,
    0.19939753397685808,
    -0.03913424930231247,
    0.029519490925705823,
    0.02733306834499825,
];

pub(super) const SYM6: [f64; 12] = [
    0.015404109327044687,
    0.0034907120842222407,
    -0.11799011114851675,
    -0.04831174258568843,
    0.4910559419279837,
    0.7876411410286497,
    0.3379294217281554,
    -0.07263752278638395,
    -0.021060292512372847,
    0.04472490177078046,
    0.001767711864253346,
    -0.00780070832503253,
];

pub(super) const SYM7: [f64; 14] = [
    0.010268176708468085,
    0.004010244871528757,
    -0.10780823770329787,
    -0.14004724044295583,
    0.2886296317506423,
    0.767764317004885,
    0.536101917090564,
    0.0174412550868506,
    -0.04955283493702211,
    0.06789269350121721,
    0.03051551316587248,
    -0.012636303403237324,
    -0.0010473848886792725,
    0.0026818145682591566,
];

pub(super) const SYM8: [f64; 16] = [
    0.0018899503327676496,
    -0.00030292051471998916,
    -0.014952258337074099,
    0.0038087520138144655,
    0.04913717967365588,
    -0.02721902991714625,
    -0.051945838108315254,
    0.36444189483537043,
    0.7771857516995169,
    0.4813596512598977,
    -0.06127335906715212,
    -0.14329423835123098,
    0.007607487324929967,
    0.031695087811568864,
    -0.0005421323317813507,
    -0.0033824159510066443,
];

pub(super) const SYM9: [f64; 18] = [
    0.0010694900329109513,
    -0.0004731544986724066,
    -0.010264064027638863,
    0.008859267493366414,
    0.06207778930292821,
    -0.018233770779177705,
    -0.1915508312971704,
    0.03527248803495394,
    0.6173384491405975,
    0.7178970827646234,
    0.23876091460767937,
    -0.05456895843086778,
    0.0005834627459373189,
    0.030224878858254565,
    -0.011528210207675516,
    -0.013271967781854667,
    0.0006197808889787711,
    0.0014009155259216823,
];

pub(super) const SYM10: [f64; 20] = [
    -0.0004101159157683517,
    0.00034014926640664266,
    0.005071649198460424,
    -0.0011404297954690208,
    -0.0230054613534835,
    -0.0008687521103993317,
    0.03384235466074964,
    -0.06708990781011599,
    -0.0878787115084741,
    0.3402160130288995,
    0.7669548365613892,
    0.5137098733433818,
    -0.015019238843829021,
    -0.12155210554837356,
    0.026240365061799054,
    0.04968612664868132,
    0.000595682783454165,
    -0.007056764062776251,
    0.0007154205422501827,
    0.0008625782263125823,
];

