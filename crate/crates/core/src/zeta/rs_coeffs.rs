// Generated by tools/rs_coeffs.py. Do not edit.
//
// C_k(p) = sum_j COEFFS[k][j] * (p - 1/2)^j for the fractional part p.

const C0: [f64; 43] = [
    3.8268343236508977e-1,
    0.0,
    1.7489618723100818,
    0.0,
    2.1180252076854964,
    0.0,
    -8.7072166705114807e-1,
    1.7730618948881804e-61,
    -3.4733112243465167,
    1.0357079180302477e-61,
    -1.6626947308999324,
    -8.8731297656203833e-62,
    1.2167312889192321,
    -1.0795792148212333e-61,
    1.3014304161007976,
    -2.8183910504075802e-63,
    3.0511021827361672e-2,
    3.8003006755586299e-62,
    -3.7558030515450952e-1,
    1.187728068646007e-62,
    -1.085784416564066e-1,
    -6.063692612104755e-63,
    5.1832902999549623e-2,
    -3.7191595849621508e-63,
    2.9999480619902276e-2,
    2.9668046628879647e-64,
    -2.2759396706125642e-3,
    5.9660304005002113e-64,
    -4.3826474165803383e-3,
    5.7425153489425211e-65,
    -4.064230183729847e-4,
    -5.842970560145508e-65,
    4.0060977854221139e-4,
    -1.3438831178184856e-65,
    8.9710579913888413e-5,
    3.5262520429055254e-66,
    -2.3025650027239107e-5,
    1.4621483013732191e-66,
    -9.3800066019067925e-6,
    -9.9915486655041416e-68,
    6.3235149476091075e-7,
    -1.045055440531722e-67,
    6.5510228192315017e-7,
];

const C1: [f64; 44] = [
    0.0,
    -5.3650205256750694e-2,
    0.0,
    1.1027818741081482e-1,
    -3.9298159657136782e-62,
    1.2317200154315226,
    -5.5093054885347175e-62,
    1.2634964862799458,
    9.2713088579173875e-62,
    -1.695108997559503,
    1.9552433593791848e-61,
    -2.9998711967650101,
    8.1206897702119874e-63,
    -1.0819944959899209e-1,
    -1.636466591238599e-61,
    1.9407662946212713,
    -7.2882132083667224e-62,
    7.8384235615006865e-1,
    5.1070380118333193e-62,
    -5.0548296679003659e-1,
    4.1710332028613077e-62,
    -3.8450723496057974e-1,
    -4.3211273011415974e-63,
    3.7472646465315321e-2,
    -1.1050746192735573e-62,
    9.0920266109731763e-2,
    -1.3287735653011555e-63,
    1.0449237550064509e-2,
    1.6631968972937729e-63,
    -1.2582979651583416e-2,
    4.6431865407444563e-64,
    -3.3995037211512741e-3,
    -1.4615149885256091e-64,
    1.0410950537714891e-3,
    -7.1943690952394916e-65,
    5.0109490511184869e-4,
    5.7824482840950858e-66,
    -3.9563596690031816e-5,
    7.0546716865106479e-66,
    -4.7624592453571896e-5,
    2.7716005968366867e-67,
    -1.8539355338085132e-6,
    -4.7987730937384809e-67,
    3.1936918080068972e-6,
];

const C2: [f64; 45] = [
    5.1885428302931685e-3,
    4.9771700642833318e-64,
    1.2378633552253898e-3,
    3.4888084571597845e-63,
    -1.8137505725166997e-1,
    -4.6497018823218741e-63,
    1.4291492748532127e-1,
    -6.248468468713125e-62,
    1.3303391766687565,
    -2.1108916988994267e-62,
    3.5224723534037337e-1,
    1.6194502322147933e-61,
    -2.4210015958919507,
    1.2829181539335769e-61,
    -1.6760787022538109,
    -1.1558537383528166e-61,
    1.3689416723328372,
    -1.4412546866559976e-61,
    1.5539019430222983,
    1.7038298777399944e-62,
    -1.7221642734729981e-1,
    6.7840114356358173e-62,
    -6.359068055045431e-1,
    1.1220736622427637e-62,
    -9.9116498730412081e-2,
    -1.6588891115719904e-62,
    1.4033480067387009e-1,
    -5.8950536654109843e-63,
    4.7823520198272922e-2,
    2.2092502167786108e-63,
    -1.7356040641479781e-2,
    1.3406544939326388e-63,
    -1.0225012534028592e-2,
    -1.2408223011762978e-64,
    9.2741491597948879e-4,
    -1.8535260254525743e-64,
    1.3572194372373385e-3,
    -8.904798292167413e-66,
    6.4136901202938801e-5,
    1.7171714618348767e-65,
    -1.230080569819663e-4,
    2.5700504687392571e-66,
    -1.8313507404789203e-5,
    -1.0965639266779003e-66,
    7.8216286043226273e-6,
];

const C3: [f64; 46] = [
    -7.3643792162672424e-66,
    -2.6794321814389138e-3,
    -8.4751370840115424e-64,
    2.995372109103515e-2,
    1.3020023286282854e-63,
    -4.2570172541828698e-2,
    1.2189419339918652e-62,
    -2.8997965779803888e-1,
    -2.2591881849601549e-62,
    4.888831999235446e-1,
    -7.3755682260416062e-62,
    1.2308558763957461,
    5.3509041575226271e-62,
    -8.2975607085274087e-1,
    1.7186584556321829e-61,
    -2.2497635366665669,
    -4.5351580293956015e-63,
    7.8451399610054714e-2,
    -1.5903029649524575e-61,
    1.7467492800868894,
    -4.5748549645003981e-62,
    4.5968080979749935e-1,
    6.8441602047112539e-62,
    -6.6193534710397749e-1,
    3.4653853363073009e-62,
    -3.1590441036173635e-1,
    -1.4544177785706481e-62,
    1.2844792545207496e-1,
    -1.1913115912857978e-62,
    1.0073382716626152e-1,
    1.1411677537253877e-63,
    -9.5301838488252678e-3,
    2.3995824459850774e-63,
    -1.9264421687514089e-2,
    1.6046596643412093e-64,
    -1.2464637158769292e-3,
    -3.1145699028831383e-64,
    2.4243969641103086e-3,
    -5.6957416857361505e-65,
    4.3764769774185702e-4,
    2.691529205061051e-65,
    -2.0714032687001791e-4,
    8.1712296144240794e-66,
    -6.2743445041865156e-5,
    -1.492129204137015e-66,
    1.1575343814595669e-5,
];

const C4: [f64; 47] = [
    4.6483389361763382e-4,
    3.8150562997377507e-65,
    -4.0226429461361883e-3,
    5.1963411344489013e-66,
    3.8471770517961269e-3,
    -2.5577489292185876e-63,
    6.581175135809486e-2,
    7.9655308173817032e-63,
    -1.9604124343694449e-1,
    1.3499062083114568e-62,
    -2.0854053686358853e-1,
    -5.5122645058646636e-62,
    9.5077541851417509e-1,
    -4.1158347083833476e-62,
    5.341535312914874e-1,
    1.229833489770077e-61,
    -1.6763494411763401,
    9.2018703919907719e-62,
    -1.076747157875129,
    -1.068720602681177e-61,
    1.235339301656597,
    -9.8100287240075383e-62,
    1.0257825340057276,
    3.881053654464894e-62,
    -4.0124095793988544e-1,
    5.2745232111309687e-62,
    -5.0366639951083034e-1,
    -3.535371506732427e-63,
    3.573487795502745e-2,
    -1.6131914014420888e-62,
    1.4431763086785417e-1,
    -1.7928724740787394e-63,
    1.5091527417903469e-2,
    3.0410118318234468e-63,
    -2.6098874779194361e-2,
    7.3361169289969981e-64,
    -6.1266283795192617e-3,
    -3.6560778168077321e-64,
    3.0775031298708412e-3,
    -1.3920824142140041e-64,
    1.1562478934088752e-3,
    2.6972848966074318e-65,
    -2.2775966758472127e-4,
    1.688287211033473e-65,
    -1.4189637118181444e-4,
    -8.5105593533375172e-67,
    7.4648603079559195e-6,
];

pub(crate) const COEFFS: [&[f64]; 5] = [&C0, &C1, &C2, &C3, &C4];
